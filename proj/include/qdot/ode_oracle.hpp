// Direct numerical integration of the coupled radial system, used as an
// independent check on the closed-form solver. Nothing here touches the
// special-function kernel.
#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "qdot/model.hpp"
#include "qdot/radial_basis.hpp"
#include "qdot/spectrum.hpp"

namespace qdot {

struct RadialState {
    double r = 0.0;
    double u = 0.0;
    double du = 0.0;
    double w = 0.0;
    double dw = 0.0;
};

struct ShootConfig {
    double r_min = 1e-4;
    std::optional<double> r_max;  // default: chosen per energy, see outer_radius
    double step_tol = 1e-10;

    void validate() const;
};

/// Transports `from` to r_target through the radial system with the
/// potential term set to `region_potential` (0 inside, v outside).
RadialState integrate_radial(const DotParams& p, double eps, double region_potential, const RadialState& from,
                             double r_target, const ShootConfig& cfg = {});

/// Outer launch radius: at least max(3, 2 + 4/sqrt(b+1)), extended until the
/// growing and decaying exterior solutions separate by about e^60.
double outer_radius(const DotParams& p, double eps, const ShootConfig& cfg = {});

/// Regular solutions at r_min from the series about the origin: index 0 has
/// u ~ r^|m|, index 1 has w ~ r^|m+1|.
RadialState frobenius_seed(const DotParams& p, double eps, int which, double r);

/// Scaled 4x4 matching determinant built from the four transported states.
double oracle_det(const DotParams& p, double eps, const ShootConfig& cfg = {});

std::vector<double> oracle_levels(const DotParams& p, const ShootConfig& cfg = {}, const ScanConfig& scan = {});

/// Largest residual of the two radial equations over 50 points of
/// [0.1, 0.9] (inner) or [1.1, 2.5] (outer), relative to the largest term
/// magnitude on that line. Derivatives come from 5-point differences.
double ode_residual(const DotParams& p, double eps, const std::function<SpinorSample(double)>& sample_fn,
                    Region region);

}  // namespace qdot
