#include "qdot/radial_basis.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdlib>
#include <sstream>
#include <vector>

#include "qdot/errors.hpp"

namespace qdot {
namespace {

constexpr double kPoleTol = 1e-12;
constexpr double kImagTol = 1e-8;

void require_field(const DotParams& p, const char* who)
{
    if (!(p.b > 0.0)) {
        throw DomainError(std::string(who) + ": requires b > 0 (use zero_field_basis)");
    }
}

void require_radius(double r, const char* who)
{
    if (!(r >= 0.0) || !std::isfinite(r)) {
        throw DomainError(std::string(who) + ": radius must be finite and non-negative");
    }
}

struct InnerPiece {
    double f, g, df, dg;
};

InnerPiece inner_piece(const DotParams& p, double eps, double k, double denom, double r,
                       const EvalControl& ctrl)
{
    if (std::abs(denom) < kPoleTol) {
        throw PoleError("region1_basis: interior denominator vanishes", eps);
    }
    const double xi = p.b * r * r;
    const double dxi = 2.0 * p.b * r;
    InnerPiece out{};
    if (p.m >= 0) {
        const double alpha = p.m + 1 - k;
        const double gfac = k / (p.m + 1) / denom;
        out.f = kummer_m(alpha, p.m + 1, xi, ctrl);
        out.df = dxi * kummer_m_deriv(alpha, p.m + 1, xi, ctrl);
        out.g = gfac * kummer_m(alpha, p.m + 2, xi, ctrl);
        out.dg = gfac * dxi * kummer_m_deriv(alpha, p.m + 2, xi, ctrl);
    } else {
        const double gfac = p.m / denom;
        out.f = kummer_m(1.0 - k, 1 - p.m, xi, ctrl);
        out.df = dxi * kummer_m_deriv(1.0 - k, 1 - p.m, xi, ctrl);
        out.g = gfac * kummer_m(-k, -p.m, xi, ctrl);
        out.dg = gfac * dxi * kummer_m_deriv(-k, -p.m, xi, ctrl);
    }
    return out;
}

// U-function values (for f and g, before the g denominator) and their
// xi-derivatives for one member of the conjugate pair.
struct OuterPiece {
    Complex uf, ug, duf, dug;
    double log_scale;
};

OuterPiece outer_piece(const DotParams& p, Complex k, double xi, const EvalControl& ctrl)
{
    OuterPiece out{};
    if (p.m >= 0) {
        const TricomiFamily fam = tricomi_family(static_cast<double>(p.m + 1) - k, p.m + 1, xi, ctrl);
        out = {fam.u, fam.u_next, fam.du, fam.du_next, fam.log_scale};
    } else {
        // U(-k, -m) gives g directly; its derivative is k U(1-k, 1-m), which is f.
        const TricomiFamily fam = tricomi_family(-k, -p.m, xi, ctrl);
        out.ug = fam.u;
        out.dug = fam.du;
        out.uf = fam.du / k;
        // (beta-1-xi) U(al,be) + xi U'(al,be) = -U(al-1,be-1) at al = 1-k, be = 1-m
        out.duf = (-fam.u + (static_cast<double>(p.m) + xi) * out.uf) / xi;
        out.log_scale = fam.log_scale;
    }
    return out;
}

// Multiplies exp(log_scale) back in when every value stays well inside the
// double range.
void fold_scale(BasisEval& e)
{
    const double largest = std::max({std::abs(e.f_minus), std::abs(e.f_plus), std::abs(e.g_minus),
                                     std::abs(e.g_plus), std::abs(e.df_minus), std::abs(e.df_plus),
                                     std::abs(e.dg_minus), std::abs(e.dg_plus)});
    if (!(largest > 0.0) || std::abs(e.log_scale + std::log(largest)) > 600.0
        || std::abs(e.log_scale) > 600.0) {
        return;
    }
    const double f = std::exp(e.log_scale);
    for (double* x : {&e.f_minus, &e.f_plus, &e.g_minus, &e.g_plus, &e.df_minus, &e.df_plus, &e.dg_minus,
                      &e.dg_plus}) {
        *x *= f;
    }
    e.log_scale = 0.0;
}

double prefactor_power(int n, double x)
{
    return n == 0 ? 1.0 : std::pow(x, n);
}

}  // namespace

Coefficients Coefficients::plain() const
{
    if (outer_log_scale == 0.0) {
        return *this;
    }
    const double f = std::exp(-outer_log_scale);
    return {c1_minus, c1_plus, c2_minus * f, c2_plus * f, 0.0};
}

RealPair inner_denominators(const DotParams& p, double eps)
{
    const RealPair k = k1_pair(p, eps);
    const double base = eps / (4.0 * p.b) + p.s - 0.5;
    return {base - k.k_minus, base - k.k_plus};
}

BasisEval region1_basis(const DotParams& p, double eps, double r, const EvalControl& ctrl)
{
    require_field(p, "region1_basis");
    require_radius(r, "region1_basis");
    const RealPair k = k1_pair(p, eps);
    const RealPair d = inner_denominators(p, eps);
    const InnerPiece minus = inner_piece(p, eps, k.k_minus, d.k_minus, r, ctrl);
    const InnerPiece plus = inner_piece(p, eps, k.k_plus, d.k_plus, r, ctrl);
    BasisEval out;
    out.f_minus = minus.f;
    out.f_plus = plus.f;
    out.g_minus = minus.g;
    out.g_plus = plus.g;
    out.df_minus = minus.df;
    out.df_plus = plus.df;
    out.dg_minus = minus.dg;
    out.dg_plus = plus.dg;
    return out;
}

BasisEval region2_basis(const DotParams& p, double eps, double r, const EvalControl& ctrl)
{
    require_field(p, "region2_basis");
    if (!(r > 0.0) || !std::isfinite(r)) {
        throw DomainError("region2_basis: radius must be positive");
    }
    const ComplexPair k = k2_pair(p, eps);
    const Complex base((eps - p.v) / (4.0 * p.b) + p.s - 0.5, 0.0);
    const Complex den_minus = base - k.k_minus;
    const Complex den_plus = base - k.k_plus;
    if (std::abs(den_minus) < kPoleTol || std::abs(den_plus) < kPoleTol) {
        throw PoleError("region2_basis: exterior denominator vanishes", eps);
    }

    const double xi = p.b * r * r;
    const double dxi = 2.0 * p.b * r;
    OuterPiece lo = outer_piece(p, k.k_minus, xi, ctrl);
    OuterPiece hi = outer_piece(p, k.k_plus, xi, ctrl);

    // bring both members to a common scale with mantissas of order one
    double scale = std::max(lo.log_scale, hi.log_scale);
    double largest = 0.0;
    for (OuterPiece* piece : {&lo, &hi}) {
        if (piece->log_scale != scale) {
            const double f = std::exp(piece->log_scale - scale);
            piece->uf *= f;
            piece->ug *= f;
            piece->duf *= f;
            piece->dug *= f;
        }
        largest = std::max({largest, std::abs(piece->uf), std::abs(piece->ug), std::abs(piece->duf),
                            std::abs(piece->dug)});
    }
    if (largest > 0.0 && std::isfinite(largest)) {
        for (OuterPiece* piece : {&lo, &hi}) {
            piece->uf /= largest;
            piece->ug /= largest;
            piece->duf /= largest;
            piece->dug /= largest;
        }
        scale += std::log(largest);
    }

    const Complex half_i(0.0, 0.5);
    // sqrt(-1)/2 (X- - X+) and sqrt(+1)/2 (X- + X+)
    const std::array<Complex, 8> combos = {
        half_i * (lo.uf - hi.uf),
        0.5 * (lo.uf + hi.uf),
        half_i * (lo.ug / den_minus - hi.ug / den_plus),
        0.5 * (lo.ug / den_minus + hi.ug / den_plus),
        half_i * (lo.duf - hi.duf) * dxi,
        0.5 * (lo.duf + hi.duf) * dxi,
        half_i * (lo.dug / den_minus - hi.dug / den_plus) * dxi,
        0.5 * (lo.dug / den_minus + hi.dug / den_plus) * dxi,
    };
    const std::array<double, 4> magnitudes = {
        std::abs(lo.uf) + std::abs(hi.uf),
        std::abs(lo.ug / den_minus) + std::abs(hi.ug / den_plus),
        (std::abs(lo.duf) + std::abs(hi.duf)) * dxi,
        (std::abs(lo.dug / den_minus) + std::abs(hi.dug / den_plus)) * dxi,
    };

    BasisEval out;
    double residual = 0.0;
    for (int i = 0; i < 8; ++i) {
        const double mag = magnitudes[i / 2];
        if (mag > 0.0) {
            residual = std::max(residual, std::abs(combos[i].imag()) / mag);
        }
    }
    if (residual > kImagTol) {
        std::ostringstream msg;
        msg << "region2_basis: conjugate combination left imaginary residue " << residual << " at eps=" << eps;
        throw ConsistencyError(msg.str());
    }
    out.f_minus = combos[0].real();
    out.f_plus = combos[1].real();
    out.g_minus = combos[2].real();
    out.g_plus = combos[3].real();
    out.df_minus = combos[4].real();
    out.df_plus = combos[5].real();
    out.dg_minus = combos[6].real();
    out.dg_plus = combos[7].real();
    out.log_scale = scale;
    out.imag_residual = residual;
    fold_scale(out);
    return out;
}

BasisEval zero_field_basis(const DotParams& p, double eps, double r, Region region, const EvalControl& ctrl)
{
    if (p.b != 0.0) {
        throw DomainError("zero_field_basis: requires b = 0");
    }
    if (!(p.a > 0.0)) {
        throw DomainError("zero_field_basis: requires a > 0");
    }
    require_radius(r, "zero_field_basis");
    const int n_u = p.m;
    const int n_w = p.m + 1;
    BasisEval out;

    if (region == Region::inner) {
        const double radicand = eps + 0.25 * p.a * p.a;
        if (radicand < 0.0) {
            throw DomainError("zero_field_basis: eps + a^2/4 < 0");
        }
        const double root = std::sqrt(radicand);
        // J_m(k r), c J_{m+1}(k r) with k = root -+ a/2 and c = +1, -1
        auto bessel = [](int n, double x) {
            if (x >= 0.0) {
                return bessel_j_signed(n, x);
            }
            const double v = bessel_j_signed(n, -x);
            return (std::abs(n) % 2 == 0) ? v : -v;
        };
        // k- changes sign at eps = 0; the factor sgn(k)^n0, n0 the lower of the
        // two orders, keeps the leading small-k behaviour of the pair even in k
        const int n0 = std::min(std::abs(n_u), std::abs(n_w));
        auto column = [&](double k, double c, double& f, double& g, double& df, double& dg) {
            if (k == 0.0 && n0 > 0) {
                throw PoleError("zero_field_basis: interior wavenumber vanishes", eps);
            }
            const double x = k * r;
            const double sign = (k < 0.0 && n0 % 2 == 1) ? -c : c;
            const double fsign = (k < 0.0 && n0 % 2 == 1) ? -1.0 : 1.0;
            f = fsign * bessel(n_u, x);
            g = sign * bessel(n_w, x);
            df = fsign * 0.5 * k * (bessel(n_u - 1, x) - bessel(n_u + 1, x));
            dg = sign * 0.5 * k * (bessel(n_w - 1, x) - bessel(n_w + 1, x));
        };
        column(root - 0.5 * p.a, 1.0, out.f_minus, out.g_minus, out.df_minus, out.dg_minus);
        column(root + 0.5 * p.a, -1.0, out.f_plus, out.g_plus, out.df_plus, out.dg_plus);
        return out;
    }

    if (!(r > 0.0)) {
        throw DomainError("zero_field_basis: outer region needs r > 0");
    }
    const double radicand = p.v - eps - 0.25 * p.a * p.a;
    if (!(radicand > 0.0)) {
        throw BoundStateError("zero_field_basis: energy at or above v - a^2/4");
    }
    // (u, w) = (K_m(q r), -i K_{m+1}(q r)) with q = kappa + i a/2; real and
    // imaginary parts are the two real exterior solutions.
    const Complex q(std::sqrt(radicand), 0.5 * p.a);
    const Complex z = q * r;
    const int top = std::max(std::abs(n_u), std::abs(n_w)) + 1;
    std::vector<Complex> kn(top + 1);
    kn[0] = bessel_k_complex(0, z, ctrl);
    kn[1] = bessel_k_complex(1, z, ctrl);
    for (int n = 1; n < top; ++n) {
        kn[n + 1] = kn[n - 1] + (2.0 * n) / z * kn[n];
    }
    auto K = [&](int n) { return kn[std::abs(n)]; };
    const Complex u = K(n_u);
    const Complex w = Complex(0.0, -1.0) * K(n_w);
    const Complex du = -0.5 * q * (K(n_u - 1) + K(n_u + 1));
    const Complex dw = Complex(0.0, -1.0) * (-0.5 * q * (K(n_w - 1) + K(n_w + 1)));
    out.f_plus = u.real();
    out.g_plus = w.real();
    out.df_plus = du.real();
    out.dg_plus = dw.real();
    out.f_minus = u.imag();
    out.g_minus = w.imag();
    out.df_minus = du.imag();
    out.dg_minus = dw.imag();
    return out;
}

BasisEval basis_at(const DotParams& p, double eps, double r, Region region, const EvalControl& ctrl)
{
    if (p.b == 0.0) {
        return zero_field_basis(p, eps, r, region, ctrl);
    }
    return region == Region::inner ? region1_basis(p, eps, r, ctrl) : region2_basis(p, eps, r, ctrl);
}

SpinorJet spinor_jet(const DotParams& p, double eps, const Coefficients& c, double r, Region region,
                     const EvalControl& ctrl)
{
    const BasisEval e = basis_at(p, eps, r, region, ctrl);
    const double cm = region == Region::inner ? c.c1_minus : c.c2_minus;
    const double cp = region == Region::inner ? c.c1_plus : c.c2_plus;
    const double F = cm * e.f_minus + cp * e.f_plus;
    const double G = cm * e.g_minus + cp * e.g_plus;
    const double dF = cm * e.df_minus + cp * e.df_plus;
    const double dG = cm * e.dg_minus + cp * e.dg_plus;

    SpinorJet jet;
    jet.r = r;
    if (p.b == 0.0) {
        jet.u = F;
        jet.w = G;
        jet.du = dF;
        jet.dw = dG;
        return jet;
    }

    const int nu = std::abs(p.m);
    const int nw = std::abs(p.m + 1);
    const double sb = std::sqrt(p.b);
    const double carried = region == Region::outer ? e.log_scale - c.outer_log_scale : 0.0;
    const double gauss = std::exp(-0.5 * p.b * r * r + carried);
    const double pu = gauss * prefactor_power(nu, sb * r);
    const double pw = gauss * prefactor_power(nw, sb * r) * p.a / (2.0 * sb);
    // d/dr [e^{-b r^2/2} (sqrt(b) r)^n] = e^{-b r^2/2} b^{n/2} (n r^{n-1} - b r^{n+1})
    auto dprefactor = [&](int n) {
        const double lead = n == 0 ? 0.0 : n * std::pow(sb, n) * prefactor_power(n - 1, r);
        return gauss * (lead - p.b * prefactor_power(n, sb * r) * r);
    };
    const double dpu = dprefactor(nu);
    const double dpw = dprefactor(nw) * p.a / (2.0 * sb);
    jet.u = pu * F;
    jet.w = pw * G;
    jet.du = dpu * F + pu * dF;
    jet.dw = dpw * G + pw * dG;
    return jet;
}

SpinorSample radial_spinor(const DotParams& p, double eps, const Coefficients& c, double r,
                           const EvalControl& ctrl)
{
    const SpinorJet jet = spinor_jet(p, eps, c, r, r <= 1.0 ? Region::inner : Region::outer, ctrl);
    return {r, jet.u, jet.w};
}

}  // namespace qdot
