// Dimensionless model of a circular finite-depth quantum dot with Rashba
// coupling, a perpendicular magnetic field and the Zeeman term.
#pragma once

#include <utility>

#include "qdot/special.hpp"

namespace qdot {

/// Dimensionless parameters. `m` labels the spin-up angular index; the
/// spin-down component carries m+1.
struct DotParams {
    int m = 0;
    double v = 0.0;   // well depth
    double a = 0.0;   // Rashba strength
    double b = 0.0;   // magnetic field
    double s = 0.05;  // Zeeman factor g M_eff / (4 M_e)

    /// Throws DomainError unless v > 0, a > 0, b >= 0 and all finite.
    void validate() const;
};

/// Physical inputs in any consistent unit system, together with the
/// constants that system needs (defaults are Gaussian-cgs values).
struct PhysicalInputs {
    double rho0 = 0.0;    // dot radius
    double E = 0.0;       // energy
    double V = 0.0;       // well depth
    double a_R = 0.0;     // Rashba coefficient (velocity units)
    double B = 0.0;       // magnetic flux density
    double M_eff = 0.0;   // effective mass
    double g = 0.0;       // effective g-factor

    double hbar = 1.054571817e-27;    // erg s
    double charge = 4.80320471e-10;   // statC
    double c = 2.99792458e10;         // cm / s
    double M_e = 9.1093837015e-28;    // g
};

struct DimensionlessState {
    DotParams params;
    double eps = 0.0;
};

DimensionlessState to_dimensionless(const PhysicalInputs& in);

/// Inverse of to_dimensionless given the length scale, mass and constants
/// carried by `units` (its E, V, a_R, B and g fields are ignored).
PhysicalInputs to_physical(const DimensionlessState& state, const PhysicalInputs& units);

struct RealPair {
    double k_minus;
    double k_plus;
};

struct ComplexPair {
    Complex k_minus;
    Complex k_plus;
};

/// Field-dependent part of the threshold, (4b/a)^2 (s - 1/2)^2.
double zeeman_shift(const DotParams& p);

/// Interior parameters k1-, k1+ (b > 0).
RealPair k1_pair(const DotParams& p, double eps);

/// Exterior conjugate pair k2-, k2+ (b > 0, eps < v*).
ComplexPair k2_pair(const DotParams& p, double eps);

/// v* = v - a^2/4 - (4b/a)^2 (s - 1/2)^2.
double bound_threshold(const DotParams& p);

}  // namespace qdot
