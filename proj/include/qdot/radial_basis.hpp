// Closed-form radial basis functions f-, f+, g-, g+ inside (r < 1) and
// outside (r > 1) the dot, and the spinor amplitudes u(r), w(r) built from
// them.
//
// With b > 0 the full amplitudes are
//   u = e^{-b r^2/2} (sqrt(b) r)^{|m|}   (c- f- + c+ f+)
//   w = e^{-b r^2/2} (sqrt(b) r)^{|m+1|} (a / (2 sqrt(b))) (c- g- + c+ g+)
// and at b = 0 simply u = c- f- + c+ f+, w = c- g- + c+ g+ with Bessel
// functions in place of the confluent hypergeometric ones.
#pragma once

#include <functional>

#include "qdot/model.hpp"
#include "qdot/special.hpp"

namespace qdot {

enum class Region { inner, outer };

/// Basis values and their r-derivatives at one radius. Outer values may carry
/// a common factor exp(log_scale) when their magnitude does not fit a double.
struct BasisEval {
    double f_minus = 0.0;
    double f_plus = 0.0;
    double g_minus = 0.0;
    double g_plus = 0.0;
    double df_minus = 0.0;
    double df_plus = 0.0;
    double dg_minus = 0.0;
    double dg_plus = 0.0;
    double log_scale = 0.0;
    double imag_residual = 0.0;  // outer region only: dropped imaginary part, relative
};

/// c2_minus and c2_plus carry an extra factor exp(-outer_log_scale), nonzero
/// only when the exterior basis itself needs a log scale (very weak fields).
struct Coefficients {
    double c1_minus = 0.0;
    double c1_plus = 0.0;
    double c2_minus = 0.0;
    double c2_plus = 0.0;
    double outer_log_scale = 0.0;

    /// Same coefficients with the exterior scale multiplied in; may underflow.
    Coefficients plain() const;
};

struct SpinorSample {
    double r = 0.0;
    double u = 0.0;
    double w = 0.0;
};

/// Spinor amplitudes together with their first derivatives.
struct SpinorJet {
    double r = 0.0;
    double u = 0.0;
    double w = 0.0;
    double du = 0.0;
    double dw = 0.0;
};

/// Interior denominators -k1 + eps/(4b) + s - 1/2 for k1-, k1+ (b > 0).
RealPair inner_denominators(const DotParams& p, double eps);

BasisEval region1_basis(const DotParams& p, double eps, double r, const EvalControl& ctrl = {});

BasisEval region2_basis(const DotParams& p, double eps, double r, const EvalControl& ctrl = {});

/// Bessel-function basis for b = 0.
BasisEval zero_field_basis(const DotParams& p, double eps, double r, Region region,
                           const EvalControl& ctrl = {});

/// Dispatches on b and on the region.
BasisEval basis_at(const DotParams& p, double eps, double r, Region region, const EvalControl& ctrl = {});

/// u, w and their derivatives using the basis of the given region.
SpinorJet spinor_jet(const DotParams& p, double eps, const Coefficients& c, double r, Region region,
                     const EvalControl& ctrl = {});

/// u(r), w(r): region 1 pieces for r <= 1, region 2 pieces beyond.
SpinorSample radial_spinor(const DotParams& p, double eps, const Coefficients& c, double r,
                           const EvalControl& ctrl = {});

}  // namespace qdot
