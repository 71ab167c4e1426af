#include "qdot/ode_oracle.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdlib>
#include <future>
#include <sstream>
#include <thread>

#include <Eigen/Dense>
#include <boost/numeric/odeint.hpp>

#include "qdot/errors.hpp"
#include "qdot/roots.hpp"

namespace qdot {
namespace {

using State = std::array<double, 4>;  // u, u', w, w'

constexpr int kMaxSteps = 200000;
constexpr double kSeparation = 60.0;  // log of the growing/decaying ratio across [1, r_max]
constexpr double kMaxOuterRadius = 60.0;
constexpr int kSeriesTerms = 48;

struct RadialSystem {
    DotParams p;
    double e;  // eps minus the region potential

    void operator()(const State& x, State& dx, double r) const
    {
        const double m = p.m;
        const double m1 = p.m + 1;
        const double b = p.b;
        const double u = x[0];
        const double du = x[1];
        const double w = x[2];
        const double dw = x[3];
        dx[0] = du;
        dx[1] = -du / r - e * u + m * m * u / (r * r) + 2.0 * b * m * u + b * b * r * r * u + 4.0 * p.s * b * u
                + p.a * (dw + m1 * w / r + b * r * w);
        dx[2] = dw;
        dx[3] = -dw / r - e * w + m1 * m1 * w / (r * r) + 2.0 * b * m1 * w + b * b * r * r * w
                - 4.0 * p.s * b * w + p.a * (-du + m * u / r + b * r * u);
    }
};

State to_state(const RadialState& s) { return {s.u, s.du, s.w, s.dw}; }

RadialState from_state(double r, const State& x) { return {r, x[0], x[1], x[2], x[3]}; }

double threshold_gap(const DotParams& p, double eps) { return std::max(bound_threshold(p) - eps, 0.0); }

RadialState outer_seed(const DotParams& p, double eps, int which, double r)
{
    double env = 0.0;
    double denv = 0.0;
    if (p.b > 0.0) {
        env = std::exp(-0.5 * p.b * r * r);
        denv = -p.b * r * env;
    } else {
        const double kappa = std::sqrt(threshold_gap(p, eps));
        env = std::exp(-kappa * r);
        denv = -kappa * env;
    }
    RadialState s{r, 0.0, 0.0, 0.0, 0.0};
    if (which == 0) {
        s.u = env;
        s.du = denv;
    } else {
        s.w = env;
        s.dw = denv;
    }
    return s;
}

std::array<double, 4> column(const RadialState& s) { return {s.u, s.w, s.du, s.dw}; }

}  // namespace

void ShootConfig::validate() const
{
    if (!(r_min > 0.0 && r_min < 1.0)) {
        throw DomainError("ShootConfig: r_min must lie in (0, 1)");
    }
    if (r_max && !(*r_max > 1.0 && std::isfinite(*r_max))) {
        throw DomainError("ShootConfig: r_max must exceed 1");
    }
    if (!(step_tol > 0.0)) {
        throw DomainError("ShootConfig: step_tol must be positive");
    }
}

RadialState integrate_radial(const DotParams& p, double eps, double region_potential, const RadialState& from,
                             double r_target, const ShootConfig& cfg)
{
    namespace odeint = boost::numeric::odeint;
    cfg.validate();
    if (!(from.r > 0.0) || !(r_target > 0.0)) {
        throw DomainError("integrate_radial: radii must be positive");
    }
    State x = to_state(from);
    if (x == State{} || from.r == r_target) {
        return from_state(r_target, x);
    }

    const RadialSystem sys{p, eps - region_potential};

    const double dir = r_target > from.r ? 1.0 : -1.0;
    double r = from.r;
    double dt = 0.01 * (r_target - from.r);
    for (int steps = 0; dir * (r_target - r) > 0.0; ++steps) {
        if (steps > kMaxSteps) {
            throw StiffnessError("integrate_radial: step budget exhausted");
        }
        if (dir * (r + dt - r_target) > 0.0) {
            dt = r_target - r;
        }
        // tolerance relative to the whole state, so the transport is linear in it
        double norm = 0.0;
        for (double c : x) {
            norm = std::max(norm, std::abs(c));
        }
        auto stepper =
            odeint::make_controlled<odeint::runge_kutta_fehlberg78<State>>(cfg.step_tol * norm, cfg.step_tol);
        if (stepper.try_step(sys, x, r, dt) == odeint::fail) {
            if (std::abs(dt) < 1e-14 * std::max(1.0, std::abs(r))) {
                std::ostringstream msg;
                msg << "integrate_radial: step size underflow at r=" << r;
                throw StiffnessError(msg.str());
            }
        }
    }
    return from_state(r_target, x);
}

double outer_radius(const DotParams& p, double eps, const ShootConfig& cfg)
{
    if (cfg.r_max) {
        return *cfg.r_max;
    }
    const double base = std::max(3.0, 2.0 + 4.0 / std::sqrt(p.b + 1.0));
    const double gap = threshold_gap(p, eps);
    auto rate = [&](double r) { return std::sqrt(gap + p.b * p.b * r * r); };
    double r = 1.0;
    double exponent = 0.0;
    constexpr double h = 0.01;
    while (exponent < kSeparation && r < kMaxOuterRadius) {
        exponent += h * (rate(r) + rate(r + h));  // twice the trapezoid integral
        r += h;
    }
    return std::max(base, r);
}

RadialState frobenius_seed(const DotParams& p, double eps, int which, double r)
{
    const int m = p.m;
    const int lead_u = std::abs(m);
    const int lead_w = std::abs(m + 1);
    const double b = p.b;
    const double cu = eps - 2.0 * b * m - 4.0 * p.s * b;
    const double cw = eps - 2.0 * b * (m + 1) + 4.0 * p.s * b;

    std::array<double, kSeriesTerms> u{};
    std::array<double, kSeriesTerms> w{};
    auto at = [](const std::array<double, kSeriesTerms>& c, int n) { return n >= 0 ? c[n] : 0.0; };
    for (int n = 0; n < kSeriesTerms; ++n) {
        if (n == lead_u) {
            u[n] = which == 0 ? 1.0 : 0.0;
        } else {
            const double rhs = -cu * at(u, n - 2) + b * b * at(u, n - 4)
                               + p.a * ((n + m) * at(w, n - 1) + b * at(w, n - 3));
            u[n] = rhs / static_cast<double>(n * n - m * m);
        }
        if (n == lead_w) {
            w[n] = which == 1 ? 1.0 : 0.0;
        } else {
            const double rhs = -cw * at(w, n - 2) + b * b * at(w, n - 4)
                               + p.a * ((m - n + 1) * at(u, n - 1) + b * at(u, n - 3));
            w[n] = rhs / static_cast<double>(n * n - (m + 1) * (m + 1));
        }
    }

    RadialState s{r, 0.0, 0.0, 0.0, 0.0};
    double power = 1.0;  // r^n
    double prev = 0.0;   // r^(n-1)
    for (int n = 0; n < kSeriesTerms; ++n) {
        s.u += u[n] * power;
        s.w += w[n] * power;
        s.du += n * u[n] * prev;
        s.dw += n * w[n] * prev;
        prev = power;
        power *= r;
    }
    return s;
}

double oracle_det(const DotParams& p, double eps, const ShootConfig& cfg)
{
    const double r_max = outer_radius(p, eps, cfg);
    std::array<std::array<double, 4>, 4> cols;
    for (int which = 0; which < 2; ++which) {
        const RadialState in = integrate_radial(p, eps, 0.0, frobenius_seed(p, eps, which, cfg.r_min), 1.0, cfg);
        const RadialState out = integrate_radial(p, eps, p.v, outer_seed(p, eps, which, r_max), 1.0, cfg);
        cols[which] = column(in);
        cols[2 + which] = column(out);
        for (double& x : cols[2 + which]) {
            x = -x;
        }
    }
    Eigen::Matrix4d t;
    for (int j = 0; j < 4; ++j) {
        double scale = 0.0;
        for (double x : cols[j]) {
            scale = std::max(scale, std::abs(x));
        }
        if (!(scale > 0.0) || !std::isfinite(scale)) {
            throw EvaluationError("oracle_det: degenerate transported state", scale, 0);
        }
        for (int i = 0; i < 4; ++i) {
            t(i, j) = cols[j][i] / scale;
        }
    }
    return t.partialPivLu().determinant();
}

std::vector<double> oracle_levels(const DotParams& p, const ShootConfig& cfg, const ScanConfig& scan)
{
    cfg.validate();
    const ScanWindow window = scan_window(p, scan);
    std::vector<double> roots;
    if (window.empty()) {
        return roots;
    }

    const int n = scan.grid_n;
    std::vector<double> grid(n + 1);
    std::vector<double> values(n + 1);
    for (int i = 0; i <= n; ++i) {
        grid[i] = window.lo + (window.hi - window.lo) * i / n;
    }
    const int workers = std::max(1u, std::thread::hardware_concurrency());
    std::vector<std::future<void>> jobs;
    for (int t = 0; t < workers; ++t) {
        jobs.push_back(std::async(std::launch::async, [&, t] {
            for (int i = t; i <= n; i += workers) {
                values[i] = oracle_det(p, grid[i], cfg);
            }
        }));
    }
    for (auto& j : jobs) {
        j.get();
    }

    auto det = [&](double e) { return oracle_det(p, e, cfg); };
    for (int i = 0; i < n; ++i) {
        const double flo = values[i];
        const double fhi = values[i + 1];
        if (flo == 0.0) {
            roots.push_back(grid[i]);
        } else if ((flo < 0.0) != (fhi < 0.0) && fhi != 0.0) {
            roots.push_back(refine_root(det, grid[i], grid[i + 1], flo, fhi, scan.root_tol));
        }
    }
    return roots;
}

double ode_residual(const DotParams& p, double eps, const std::function<SpinorSample(double)>& sample_fn,
                    Region region)
{
    constexpr int kPoints = 50;
    const double lo = region == Region::inner ? 0.1 : 1.1;
    const double hi = region == Region::inner ? 0.9 : 2.5;
    const double pot = region == Region::inner ? 0.0 : p.v;
    const double e = eps - pot;
    const double m = p.m;
    const double m1 = p.m + 1;
    const double b = p.b;
    const double k = std::sqrt(std::max(std::abs(eps), std::abs(eps - p.v)));

    std::array<double, 2> worst_res{};
    std::array<double, 2> worst_scale{};
    for (int i = 0; i < kPoints; ++i) {
        const double r = lo + (hi - lo) * i / (kPoints - 1);
        const double h = 0.02 / (1.0 + b * r + k);
        std::array<SpinorSample, 5> f;
        for (int j = 0; j < 5; ++j) {
            f[j] = sample_fn(r + (j - 2) * h);
        }
        const double u = f[2].u;
        const double w = f[2].w;
        const double du = (-f[4].u + 8.0 * f[3].u - 8.0 * f[1].u + f[0].u) / (12.0 * h);
        const double dw = (-f[4].w + 8.0 * f[3].w - 8.0 * f[1].w + f[0].w) / (12.0 * h);
        const double d2u = (-f[4].u + 16.0 * f[3].u - 30.0 * u + 16.0 * f[1].u - f[0].u) / (12.0 * h * h);
        const double d2w = (-f[4].w + 16.0 * f[3].w - 30.0 * w + 16.0 * f[1].w - f[0].w) / (12.0 * h * h);

        const std::array<double, 10> line_u{
            d2u, du / r, e * u, -m * m * u / (r * r), -2.0 * b * m * u, -b * b * r * r * u, -4.0 * p.s * b * u,
            -p.a * dw, -p.a * m1 * w / r, -p.a * b * r * w};
        const std::array<double, 10> line_w{
            d2w, dw / r, e * w, -m1 * m1 * w / (r * r), -2.0 * b * m1 * w, -b * b * r * r * w, 4.0 * p.s * b * w,
            p.a * du, -p.a * m * u / r, -p.a * b * r * u};
        const std::array<const std::array<double, 10>*, 2> lines{&line_u, &line_w};
        for (int l = 0; l < 2; ++l) {
            double res = 0.0;
            double scale = 0.0;
            for (double t : *lines[l]) {
                res += t;
                scale = std::max(scale, std::abs(t));
            }
            worst_res[l] = std::max(worst_res[l], std::abs(res));
            worst_scale[l] = std::max(worst_scale[l], scale);
        }
    }
    double out = 0.0;
    for (int l = 0; l < 2; ++l) {
        if (worst_scale[l] > 0.0) {
            out = std::max(out, worst_res[l] / worst_scale[l]);
        }
    }
    return out;
}

}  // namespace qdot
