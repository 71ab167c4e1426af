#include "qdot/model.hpp"

#include <cmath>

#include "qdot/errors.hpp"

namespace qdot {

void DotParams::validate() const
{
    if (!std::isfinite(v) || !std::isfinite(a) || !std::isfinite(b) || !std::isfinite(s)) {
        throw DomainError("DotParams: non-finite parameter");
    }
    if (!(v > 0.0)) {
        throw DomainError("DotParams: well depth v must be positive");
    }
    if (!(a > 0.0)) {
        throw DomainError("DotParams: Rashba strength a must be positive");
    }
    if (!(b >= 0.0)) {
        throw DomainError("DotParams: field b must be non-negative");
    }
}

DimensionlessState to_dimensionless(const PhysicalInputs& in)
{
    if (!(in.rho0 > 0.0) || !(in.M_eff > 0.0)) {
        throw DomainError("to_dimensionless: rho0 and M_eff must be positive");
    }
    const double energy_scale = 2.0 * in.M_eff / (in.hbar * in.hbar) * in.rho0 * in.rho0;
    DimensionlessState out;
    out.eps = energy_scale * in.E;
    out.params.v = energy_scale * in.V;
    out.params.a = 2.0 * in.M_eff / in.hbar * in.rho0 * in.a_R;
    out.params.b = in.charge * in.B * in.rho0 * in.rho0 / (2.0 * in.c * in.hbar);
    out.params.s = in.g * in.M_eff / (4.0 * in.M_e);
    return out;
}

PhysicalInputs to_physical(const DimensionlessState& state, const PhysicalInputs& units)
{
    if (!(units.rho0 > 0.0) || !(units.M_eff > 0.0)) {
        throw DomainError("to_physical: rho0 and M_eff must be positive");
    }
    PhysicalInputs out = units;
    const double energy_scale = 2.0 * units.M_eff / (units.hbar * units.hbar) * units.rho0 * units.rho0;
    out.E = state.eps / energy_scale;
    out.V = state.params.v / energy_scale;
    out.a_R = state.params.a * units.hbar / (2.0 * units.M_eff * units.rho0);
    out.B = state.params.b * 2.0 * units.c * units.hbar / (units.charge * units.rho0 * units.rho0);
    out.g = state.params.s * 4.0 * units.M_e / units.M_eff;
    return out;
}

double zeeman_shift(const DotParams& p)
{
    const double ratio = 4.0 * p.b / p.a;
    const double ds = p.s - 0.5;
    return ratio * ratio * ds * ds;
}

RealPair k1_pair(const DotParams& p, double eps)
{
    if (!(p.b > 0.0)) {
        throw DomainError("k1_pair: b = 0 uses the zero-field branch");
    }
    const double radicand = eps + 0.25 * p.a * p.a + zeeman_shift(p);
    if (radicand < 0.0) {
        throw DomainError("k1_pair: negative radicand (energy below the interior branch point)");
    }
    const double root = p.a * std::sqrt(radicand);
    const double centre = eps + 0.5 * p.a * p.a;
    return {(centre - root) / (4.0 * p.b), (centre + root) / (4.0 * p.b)};
}

ComplexPair k2_pair(const DotParams& p, double eps)
{
    if (!(p.b > 0.0)) {
        throw DomainError("k2_pair: b = 0 uses the zero-field branch");
    }
    const double radicand = p.v - eps - 0.25 * p.a * p.a - zeeman_shift(p);
    if (!(radicand > 0.0)) {
        throw BoundStateError("k2_pair: energy at or above the bound-state threshold v*");
    }
    const double re = (eps - p.v + 0.5 * p.a * p.a) / (4.0 * p.b);
    const double im = p.a * std::sqrt(radicand) / (4.0 * p.b);
    return {Complex(re, -im), Complex(re, im)};
}

double bound_threshold(const DotParams& p)
{
    if (!(p.a > 0.0)) {
        throw DomainError("bound_threshold: undefined for a = 0");
    }
    return p.v - 0.25 * p.a * p.a - zeeman_shift(p);
}

}  // namespace qdot
