// Tricomi U through its integral representation
//
//   U(a,b,z) = 1/Gamma(a) * int_0^inf e^{-zt} t^{a-1} (1+t)^{b-a-1} dt,  Re a > 0.
//
// The contour is rotated onto the ray through the saddle point of the
// integrand (kept inside the sector where Re(z t) > 0), then mapped with
// s = e^x. On the x axis the integrand decays like e^{Re(a) x} on the left and
// double-exponentially on the right, with no endpoint singularity. Passing
// through the saddle avoids the e^{-pi |Im a| / 2} cancellation a fixed ray
// suffers when |Im a| is large. U(a,b+1) and the two z-derivatives differ from the base
// integrand by the polynomial weights (1+t), -t and -t(1+t), so all four are
// integrated on the same panels.
//
// For Re a <= 1/2 the family is carried down from Re a > 1/2 by the
// three-term recurrence in a.

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>
#include <vector>

#include "qdot/errors.hpp"
#include "qdot/quadrature.hpp"
#include "qdot/special.hpp"

namespace qdot {
namespace {

using Members = std::array<Complex, 4>;

constexpr double kTailDrop = 40.0;    // log-magnitude cut for the x range
constexpr double kFoldLimit = 600.0;  // log-magnitude below which values are plain doubles
constexpr double kPi = 3.14159265358979323846;

Complex log1p(Complex w)
{
    if (std::abs(w) > 0.05) {
        return std::log(1.0 + w);
    }
    // alternating series; |w| <= 0.05 needs at most ~13 terms
    Complex power = w;
    Complex sum = w;
    for (int k = 2; k < 40; ++k) {
        power *= -w;
        const Complex term = power / static_cast<double>(k);
        sum += term;
        if (std::abs(term) < 1e-17 * std::abs(sum)) {
            break;
        }
    }
    return sum;
}

struct Integrand {
    Complex alpha;
    double beta;
    Complex zeta;   // z e^{i theta}, Re zeta > 0
    Complex omega;  // e^{i theta}
    double theta;
    double peak_guess;  // log |t| at the saddle
    double shift = 0.0;  // subtracted from the real exponent

    // log of the integrand in x, written so that no two large terms cancel
    // when |alpha| is large
    Complex exponent(double x) const
    {
        const double ex = std::exp(x);
        const Complex t = omega * ex;
        if (ex < 1.0) {
            return -zeta * ex + alpha * Complex(x, theta) + (beta - alpha - 1.0) * log1p(t);
        }
        return -zeta * ex - alpha * log1p(1.0 / t) + (beta - 1.0) * std::log(1.0 + t);
    }

    double log_magnitude(double x) const { return exponent(x).real(); }

    Members operator()(double x) const
    {
        const Complex phi = exponent(x);
        const Complex base = std::exp(Complex(phi.real() - shift, phi.imag()));
        const Complex t = omega * std::exp(x);  // recomputed; exponent() keeps its own copy
        const Complex one_t = 1.0 + t;
        return {base, base * one_t, -base * t, -base * t * one_t};
    }
};

struct Panel {
    double lo;
    double hi;
    Members value;
    std::array<double, 4> error;
    std::array<double, 4> l1;
};

Panel integrate_panel(const Integrand& f, double lo, double hi)
{
    const double half = 0.5 * (hi - lo);
    const double mid = 0.5 * (hi + lo);
    std::array<Members, kronrod::size> fx;
    std::array<double, kronrod::size> wk{};
    std::array<double, kronrod::size> wg{};

    fx[0] = f(mid);
    wk[0] = kronrod::kronrod_weights[7];
    wg[0] = kronrod::gauss_weights[3];
    for (int i = 0; i < 7; ++i) {
        const double dx = half * kronrod::nodes[i];
        fx[1 + 2 * i] = f(mid - dx);
        fx[2 + 2 * i] = f(mid + dx);
        wk[1 + 2 * i] = wk[2 + 2 * i] = kronrod::kronrod_weights[i];
        wg[1 + 2 * i] = wg[2 + 2 * i] = (i % 2 == 1) ? kronrod::gauss_weights[i / 2] : 0.0;
    }

    Panel p{lo, hi, {}, {}, {}};
    for (int j = 0; j < 4; ++j) {
        Complex kron = 0.0;
        Complex gauss = 0.0;
        double l1 = 0.0;
        for (int k = 0; k < kronrod::size; ++k) {
            kron += wk[k] * fx[k][j];
            gauss += wg[k] * fx[k][j];
            l1 += wk[k] * std::abs(fx[k][j]);
        }
        // QUADPACK-style error estimate: |K - G| rescaled by the panel's
        // absolute deviation from its mean
        const Complex mean = 0.5 * kron;
        double asc = 0.0;
        for (int k = 0; k < kronrod::size; ++k) {
            asc += wk[k] * std::abs(fx[k][j] - mean);
        }
        double err = std::abs(kron - gauss) * half;
        asc *= half;
        if (asc > 0.0 && err > 0.0) {
            err = asc * std::min(1.0, std::pow(200.0 * err / asc, 1.5));
        }
        p.value[j] = half * kron;
        p.error[j] = err;
        p.l1[j] = half * l1;
    }
    return p;
}

// Locate [lo, hi] outside of which the integrand is below e^{-kTailDrop} of
// its peak. Returns the peak log-magnitude.
double find_support(const Integrand& f, double& lo, double& hi)
{
    double peak_x = f.peak_guess;
    double peak = f.log_magnitude(peak_x);

    // refine the peak location on a small stencil when the contour is rotated
    for (double step = 0.5; step > 1e-3; step *= 0.5) {
        for (;;) {
            const double left = f.log_magnitude(peak_x - step);
            const double right = f.log_magnitude(peak_x + step);
            if (left > peak && left >= right) {
                peak_x -= step;
                peak = left;
            } else if (right > peak) {
                peak_x += step;
                peak = right;
            } else {
                break;
            }
        }
    }

    double step = 0.25;
    lo = peak_x - step;
    while (f.log_magnitude(lo) > peak - kTailDrop) {
        peak = std::max(peak, f.log_magnitude(lo));
        step = std::min(step * 1.5, 8.0);
        lo -= step;
    }
    step = 0.25;
    hi = peak_x + step;
    while (f.log_magnitude(hi) > peak - kTailDrop) {
        peak = std::max(peak, f.log_magnitude(hi));
        step = std::min(step * 1.5, 2.0);
        hi += step;
    }
    return peak;
}

TricomiFamily integral_family(Complex alpha, int beta, Complex z, const EvalControl& ctrl)
{
    // saddle of -z t + alpha log t + (beta - alpha - 1) log(1 + t) in log t:
    // z t^2 - (beta - 1 - z) t - alpha = 0, root with Re(z t) > 0
    const Complex c = static_cast<double>(beta) - 1.0 - z;
    const Complex disc = std::sqrt(c * c + 4.0 * z * alpha);
    Complex saddle = (c + disc) / (2.0 * z);
    const Complex other = (c - disc) / (2.0 * z);
    if ((z * other).real() > (z * saddle).real()) {
        saddle = other;
    }
    constexpr double kSectorMargin = 0.35;  // keeps Re(z t) >= sin(0.35) |z t| on the ray
    const double half_width = 0.5 * kPi - kSectorMargin;
    const double centre = -std::arg(z);
    double theta = saddle == Complex(0.0, 0.0) ? centre : std::arg(saddle);
    theta = std::clamp(theta, centre - half_width, centre + half_width);

    Integrand f;
    f.alpha = alpha;
    f.beta = beta;
    f.theta = theta;
    f.omega = std::polar(1.0, theta);
    f.zeta = z * f.omega;
    f.peak_guess = std::log(std::max(std::abs(saddle), 1e-300));

    double lo = 0.0;
    double hi = 0.0;
    f.shift = find_support(f, lo, hi);

    // t^alpha turns over |Im alpha| / (2 pi) times per unit of x; at most two
    // turns per starting panel
    const double turns = std::abs(alpha.imag()) * (hi - lo) / (2.0 * kPi);
    const int initial = std::max({2, static_cast<int>(std::ceil(0.5 * (hi - lo))), static_cast<int>(std::ceil(0.5 * turns))});
    const int max_panels = std::max(ctrl.quad_points, 4 * initial);
    std::vector<Panel> panels;
    panels.reserve(max_panels + 1);
    const double width = (hi - lo) / initial;
    for (int i = 0; i < initial; ++i) {
        panels.push_back(integrate_panel(f, lo + i * width, lo + (i + 1) * width));
    }

    const double noise = 2e-16 * (4.0 + std::abs(alpha));
    Members total{};
    std::array<double, 4> tol{};
    for (;;) {
        total = {};
        std::array<double, 4> err{};
        std::array<double, 4> l1{};
        for (const auto& p : panels) {
            for (int j = 0; j < 4; ++j) {
                total[j] += p.value[j];
                err[j] += p.error[j];
                l1[j] += p.l1[j];
            }
        }
        bool done = true;
        for (int j = 0; j < 4; ++j) {
            // the integrand itself carries ~|alpha| ulps of rounding noise
            tol[j] = std::max(0.1 * ctrl.rel_tol * std::abs(total[j]), noise * l1[j]);
            if (err[j] > tol[j]) {
                done = false;
            }
        }
        if (done) {
            break;
        }
        if (static_cast<int>(panels.size()) >= max_panels) {
            std::ostringstream msg;
            msg << "tricomi_u: quadrature did not converge in " << max_panels
                << " panels (alpha=" << alpha << ", beta=" << beta << ", z=" << z
                << ", error/tol=" << err[0] / tol[0] << ")";
            throw EvaluationError(msg.str(), std::abs(total[0]), static_cast<int>(panels.size()));
        }
        auto worst = std::max_element(panels.begin(), panels.end(), [&](const Panel& a, const Panel& b) {
            double ea = 0.0;
            double eb = 0.0;
            for (int j = 0; j < 4; ++j) {
                ea = std::max(ea, a.error[j] / tol[j]);
                eb = std::max(eb, b.error[j] / tol[j]);
            }
            return ea < eb;
        });
        const double a = worst->lo;
        const double b = worst->hi;
        const double m = 0.5 * (a + b);
        *worst = integrate_panel(f, a, m);
        panels.push_back(integrate_panel(f, m, b));
    }

    const Complex lg = log_gamma(alpha);
    const Complex phase = std::exp(Complex(0.0, -lg.imag()));
    TricomiFamily out;
    out.u = total[0] * phase;
    out.u_next = total[1] * phase;
    out.du = total[2] * phase;
    out.du_next = total[3] * phase;
    out.log_scale = f.shift - lg.real();
    return out;
}

void fold(TricomiFamily& fam)
{
    const double largest = std::max({std::abs(fam.u), std::abs(fam.u_next), std::abs(fam.du), std::abs(fam.du_next)});
    const double magnitude = largest > 0.0 ? fam.log_scale + std::log(largest) : 0.0;
    if (std::abs(magnitude) < kFoldLimit) {
        const double s = std::exp(fam.log_scale);
        fam.u *= s;
        fam.u_next *= s;
        fam.du *= s;
        fam.du_next *= s;
        fam.log_scale = 0.0;
    }
}

// Rescales `fam` to log scale `target` (target >= fam.log_scale).
void rescale(TricomiFamily& fam, double target)
{
    const double f = std::exp(fam.log_scale - target);
    fam.u *= f;
    fam.u_next *= f;
    fam.du *= f;
    fam.du_next *= f;
    fam.log_scale = target;
}

TricomiFamily family_unfolded(Complex alpha, int beta, Complex z, const EvalControl& ctrl)
{
    if (alpha == Complex(0.0, 0.0)) {
        return {1.0, 1.0, 0.0, 0.0, 0.0};
    }
    if (alpha.real() > 0.5) {
        return integral_family(alpha, beta, z, ctrl);
    }

    // U is the minimal solution of the alpha recurrence at fixed beta, so it
    // is carried downward from a0 = alpha + n, a0 + 1 (Re a0 > 0.5) via
    //   U(a-1,b) = (2a - b + z) U(a,b) - a (a - b + 1) U(a+1,b).
    const int n = static_cast<int>(std::floor(0.5 - alpha.real())) + 1;
    const Complex a0 = alpha + static_cast<double>(n);
    TricomiFamily f0 = integral_family(a0, beta, z, ctrl);
    TricomiFamily f1 = integral_family(a0 + 1.0, beta, z, ctrl);
    const double scale = std::max(f0.log_scale, f1.log_scale);
    rescale(f0, scale);
    rescale(f1, scale);

    // third member U(a, beta+2) from z U(a,b+2) = (a - b) U(a,b) + (b + z) U(a,b+1)
    const double b = beta;
    auto next_beta = [&](Complex a, Complex u0, Complex u1) { return ((a - b) * u0 + (b + z) * u1) / z; };
    std::array<Complex, 3> upper{f1.u, f1.u_next, next_beta(a0 + 1.0, f1.u, f1.u_next)};  // at a+1
    std::array<Complex, 3> lower{f0.u, f0.u_next, next_beta(a0, f0.u, f0.u_next)};        // at a
    Complex a = a0;
    for (int step = 0; step < n; ++step) {
        std::array<Complex, 3> below{};
        for (int j = 0; j < 3; ++j) {
            const double bj = b + j;
            below[j] = (2.0 * a - bj + z) * lower[j] - a * (a - bj + 1.0) * upper[j];
        }
        upper = lower;
        lower = below;
        a -= 1.0;
    }

    TricomiFamily out;
    out.u = lower[0];
    out.u_next = lower[1];
    out.du = -alpha * upper[1];
    out.du_next = -alpha * upper[2];
    out.log_scale = scale;
    return out;
}

}  // namespace

Complex ScaledComplex::value() const
{
    return log_scale == 0.0 ? mantissa : mantissa * std::exp(log_scale);
}

TricomiFamily tricomi_family(Complex alpha, int beta, Complex z, const EvalControl& ctrl)
{
    ctrl.validate();
    if (!(z.real() > 0.0)) {
        throw DomainError("tricomi_u: requires Re z > 0");
    }
    if (!std::isfinite(alpha.real()) || !std::isfinite(alpha.imag()) || !std::isfinite(z.imag())
        || !std::isfinite(z.real())) {
        throw DomainError("tricomi_u: non-finite argument");
    }
    TricomiFamily fam = family_unfolded(alpha, beta, z, ctrl);
    fold(fam);
    return fam;
}

ScaledComplex tricomi_u_scaled(Complex alpha, int beta, Complex z, const EvalControl& ctrl)
{
    const TricomiFamily fam = tricomi_family(alpha, beta, z, ctrl);
    return {fam.u, fam.log_scale};
}

Complex tricomi_u(Complex alpha, int beta, Complex z, const EvalControl& ctrl)
{
    return tricomi_u_scaled(alpha, beta, z, ctrl).value();
}

Complex tricomi_u_deriv(Complex alpha, int beta, Complex z, const EvalControl& ctrl)
{
    const TricomiFamily fam = tricomi_family(alpha, beta, z, ctrl);
    return ScaledComplex{fam.du, fam.log_scale}.value();
}

}  // namespace qdot
