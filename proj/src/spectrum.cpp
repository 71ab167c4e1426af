#include "qdot/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include <Eigen/Dense>

#include "qdot/errors.hpp"
#include "qdot/quadrature.hpp"
#include "qdot/roots.hpp"

namespace qdot {
namespace {

constexpr double kOuterMargin = 1e-6;   // eps_hi default sits this far below v*
constexpr double kSingularRcond = 1e-12;

double d_minus(const DotParams& p, double eps) { return inner_denominators(p, eps).k_minus; }
double d_plus(const DotParams& p, double eps) { return inner_denominators(p, eps).k_plus; }

// Lowest energy at which both interior k1 stay real.
double interior_floor(const DotParams& p) { return -0.25 * p.a * p.a - zeeman_shift(p); }

double integrate_panel(const DotParams& p, double eps, const Coefficients& c, double lo, double hi,
                       const GaussRule& rule, const EvalControl& ctrl)
{
    const double half = 0.5 * (hi - lo);
    const double mid = 0.5 * (hi + lo);
    double sum = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        const double r = mid + half * rule.nodes[i];
        const SpinorSample s = radial_spinor(p, eps, c, r, ctrl);
        sum += rule.weights[i] * (s.u * s.u + s.w * s.w) * r;
    }
    return half * sum;
}

}  // namespace

double MatchMatrix::determinant() const
{
    Eigen::Matrix4d t;
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
            t(i, j) = entries[i][j];
        }
    }
    return t.partialPivLu().determinant();
}

void ScanConfig::validate() const
{
    if (grid_n < 16) {
        throw DomainError("ScanConfig: grid_n must be at least 16");
    }
    if (!(root_tol > 0.0) || !(pole_guard > 1.0)) {
        throw DomainError("ScanConfig: root_tol must be positive and pole_guard above 1");
    }
    if ((eps_lo && !std::isfinite(*eps_lo)) || (eps_hi && !std::isfinite(*eps_hi))) {
        throw DomainError("ScanConfig: energy bounds must be finite");
    }
}

ScanWindow scan_window(const DotParams& p, const ScanConfig& cfg)
{
    p.validate();
    cfg.validate();
    const double vstar = bound_threshold(p);
    const double top = vstar - kOuterMargin * std::max(1.0, std::abs(vstar));
    const double floor = interior_floor(p);
    const double floor_margin = 1e-9 * std::max(1.0, std::abs(floor));

    ScanWindow w;
    w.lo = cfg.eps_lo.value_or(std::min(0.0, -4.0 * p.s * p.b - 0.5 * p.a * p.a));
    w.lo = std::max(w.lo, floor + floor_margin);
    w.hi = std::min(cfg.eps_hi.value_or(top), top);
    return w;
}

MatchMatrix build_t4(const DotParams& p, double eps, const EvalControl& ctrl)
{
    const BasisEval in = basis_at(p, eps, 1.0, Region::inner, ctrl);
    const BasisEval out = basis_at(p, eps, 1.0, Region::outer, ctrl);

    const std::array<std::array<double, 4>, 4> cols{{
        {in.f_minus, in.g_minus, in.df_minus, in.dg_minus},
        {in.f_plus, in.g_plus, in.df_plus, in.dg_plus},
        {-out.f_minus, -out.g_minus, -out.df_minus, -out.dg_minus},
        {-out.f_plus, -out.g_plus, -out.df_plus, -out.dg_plus},
    }};

    MatchMatrix t;
    t.outer_log_scale = out.log_scale;
    for (int j = 0; j < 4; ++j) {
        double scale = 0.0;
        for (double x : cols[j]) {
            scale = std::max(scale, std::abs(x));
        }
        if (!std::isfinite(scale)) {
            std::ostringstream msg;
            msg << "build_t4: non-finite basis value at eps=" << eps;
            throw EvaluationError(msg.str(), scale, 0);
        }
        if (scale == 0.0) {
            scale = 1.0;
        }
        t.column_scales[j] = scale;
        for (int i = 0; i < 4; ++i) {
            t.entries[i][j] = cols[j][i] / scale;
        }
    }
    return t;
}

double det_t4(const DotParams& p, double eps, const EvalControl& ctrl)
{
    return build_t4(p, eps, ctrl).determinant();
}

bool pole_between(const DotParams& p, double lo, double hi, double* where)
{
    if (!(p.b > 0.0) || !(lo < hi)) {
        return false;
    }
    double best = std::numeric_limits<double>::infinity();
    for (auto fn : {d_minus, d_plus}) {
        auto d = [&](double e) { return fn(p, e); };
        const double dlo = d(lo);
        const double dhi = d(hi);
        if (dlo == 0.0) {
            best = std::min(best, lo);
        } else if (dhi == 0.0) {
            best = std::min(best, hi);
        } else if ((dlo < 0.0) != (dhi < 0.0)) {
            best = std::min(best, bisect_sign(d, lo, hi));
        }
    }
    if (!std::isfinite(best)) {
        return false;
    }
    if (where != nullptr) {
        *where = best;
    }
    return true;
}

Coefficients match_coefficients(const DotParams& p, double eps, const EvalControl& ctrl)
{
    const MatchMatrix t = build_t4(p, eps, ctrl);

    Eigen::Vector4d scaled;
    Eigen::Matrix3d block;
    Eigen::Vector3d rhs;
    for (int i = 0; i < 3; ++i) {
        rhs(i) = -t.entries[i][0];
        for (int j = 0; j < 3; ++j) {
            block(i, j) = t.entries[i][j + 1];
        }
    }
    const Eigen::FullPivLU<Eigen::Matrix3d> lu(block);
    if (lu.rcond() > kSingularRcond) {
        const Eigen::Vector3d x = lu.solve(rhs);
        scaled << 1.0, x(0), x(1), x(2);
    } else {
        Eigen::Matrix4d full;
        for (int i = 0; i < 4; ++i) {
            for (int j = 0; j < 4; ++j) {
                full(i, j) = t.entries[i][j];
            }
        }
        const Eigen::JacobiSVD<Eigen::Matrix4d> svd(full, Eigen::ComputeFullV);
        scaled = svd.matrixV().col(3);
        if (std::abs(scaled(0)) > 1e-300) {
            scaled /= scaled(0);
        }
    }

    Coefficients c;
    c.c1_minus = scaled(0) / t.column_scales[0];
    c.c1_plus = scaled(1) / t.column_scales[1];
    c.c2_minus = scaled(2) / t.column_scales[2];
    c.c2_plus = scaled(3) / t.column_scales[3];
    c.outer_log_scale = t.outer_log_scale;
    return c;
}

double norm_integral(const DotParams& p, double eps, const Coefficients& c, const EvalControl& ctrl)
{
    static const GaussRule rule = gauss_legendre(20);
    constexpr int kInnerPanels = 4;
    constexpr int kMaxOuterPanels = 120;

    double inner = 0.0;
    for (int i = 0; i < kInnerPanels; ++i) {
        inner += integrate_panel(p, eps, c, static_cast<double>(i) / kInnerPanels,
                                 static_cast<double>(i + 1) / kInnerPanels, rule, ctrl);
    }

    double outer = 0.0;
    double r = 1.0;
    double width = 0.25;
    int quiet = 0;
    for (int k = 0; k < kMaxOuterPanels && quiet < 2; ++k) {
        const double piece = integrate_panel(p, eps, c, r, r + width, rule, ctrl);
        outer += piece;
        quiet = (std::abs(piece) < 1e-17 * (inner + outer)) ? quiet + 1 : 0;
        r += width;
        width *= 1.15;
    }
    return inner + outer;
}

NormalizedCoefficients normalize(const DotParams& p, double eps, const Coefficients& c, SignConvention sign,
                                 const EvalControl& ctrl)
{
    const double n = norm_integral(p, eps, c, ctrl);
    if (!(n > 0.0) || !std::isfinite(n)) {
        throw DomainError("normalize: norm integral is zero or not finite");
    }
    double scale = 1.0 / std::sqrt(n);

    const std::array<double, 4> vals{c.c1_minus, c.c1_plus, c.c2_minus, c.c2_plus};
    double lead = 0.0;
    if (sign == SignConvention::negative_lead) {
        lead = -vals[0];
    } else {
        for (double v : vals) {
            if (v != 0.0) {
                lead = v;
                break;
            }
        }
    }
    if (lead < 0.0) {
        scale = -scale;
    }

    NormalizedCoefficients out;
    out.coeffs = {c.c1_minus * scale, c.c1_plus * scale, c.c2_minus * scale, c.c2_plus * scale, c.outer_log_scale};
    out.norm_constant = n;
    return out;
}

double continuity_residual(const DotParams& p, const EnergyLevel& level, const EvalControl& ctrl)
{
    const SpinorJet in = spinor_jet(p, level.eps, level.coeffs, 1.0, Region::inner, ctrl);
    const SpinorJet out = spinor_jet(p, level.eps, level.coeffs, 1.0, Region::outer, ctrl);
    const std::array<std::pair<double, double>, 4> pairs{{
        {in.u, out.u},
        {in.w, out.w},
        {in.du, out.du},
        {in.dw, out.dw},
    }};
    double worst = 0.0;
    for (const auto& [a, b] : pairs) {
        worst = std::max(worst, std::abs(a - b) / (1.0 + std::abs(a)));
    }
    return worst;
}

std::vector<EnergyLevel> find_levels(const DotParams& p, const ScanConfig& cfg, const EvalControl& ctrl)
{
    const ScanWindow window = scan_window(p, cfg);
    std::vector<EnergyLevel> levels;
    if (window.empty()) {
        return levels;
    }

    auto det = [&](double e) { return det_t4(p, e, ctrl); };

    const int n = cfg.grid_n;
    std::vector<double> grid(n + 1);
    std::vector<double> values(n + 1, std::numeric_limits<double>::quiet_NaN());
    for (int i = 0; i <= n; ++i) {
        grid[i] = window.lo + (window.hi - window.lo) * i / n;
        try {
            values[i] = det(grid[i]);
        } catch (const PoleError&) {
            // grid point landed on a denominator zero; the cell split below handles it
        }
    }

    std::vector<double> finite;
    for (double v : values) {
        if (std::isfinite(v)) {
            finite.push_back(std::abs(v));
        }
    }
    double typical = 0.0;
    if (!finite.empty()) {
        std::nth_element(finite.begin(), finite.begin() + finite.size() / 2, finite.end());
        typical = finite[finite.size() / 2];
    }

    std::vector<double> roots;
    auto try_bracket = [&](double lo, double hi, double flo, double fhi) {
        if (!std::isfinite(flo) || !std::isfinite(fhi)) {
            return;
        }
        if ((flo < 0.0) == (fhi < 0.0) && flo != 0.0 && fhi != 0.0) {
            return;
        }
        if (typical > 0.0 && std::abs(flo) > cfg.pole_guard * typical
            && std::abs(fhi) > cfg.pole_guard * typical) {
            return;
        }
        if (flo == 0.0) {
            roots.push_back(lo);
            return;
        }
        if (fhi == 0.0) {
            roots.push_back(hi);
            return;
        }
        roots.push_back(refine_root(det, lo, hi, flo, fhi, cfg.root_tol));
    };

    const double nudge = 1e-10 * std::max(1.0, window.hi - window.lo);
    for (int i = 0; i < n; ++i) {
        double lo = grid[i];
        double flo = values[i];
        if (!std::isfinite(flo)) {
            lo += nudge;
            flo = det(lo);
        }
        const double hi_end = grid[i + 1];
        double pole = 0.0;
        while (pole_between(p, lo, hi_end, &pole)) {
            const double left = pole - nudge;
            if (left > lo) {
                try_bracket(lo, left, flo, det(left));
            }
            lo = pole + nudge;
            if (!(lo < hi_end)) {
                break;
            }
            flo = det(lo);
        }
        if (lo < hi_end) {
            double fhi = values[i + 1];
            if (!std::isfinite(fhi)) {
                fhi = det(hi_end - nudge);
            }
            try_bracket(lo, hi_end, flo, fhi);
        }
    }

    std::sort(roots.begin(), roots.end());
    roots.erase(std::unique(roots.begin(), roots.end(),
                            [&](double a, double b) { return std::abs(a - b) < 2.0 * cfg.root_tol; }),
                roots.end());

    for (double eps : roots) {
        EnergyLevel level;
        level.eps = eps;
        const NormalizedCoefficients nc = normalize(p, eps, match_coefficients(p, eps, ctrl), cfg.sign, ctrl);
        level.coeffs = nc.coeffs;
        level.norm_constant = nc.norm_constant;
        level.continuity_residual = continuity_residual(p, level, ctrl);
        level.level_index = static_cast<int>(levels.size());
        levels.push_back(level);
    }
    return levels;
}

}  // namespace qdot
