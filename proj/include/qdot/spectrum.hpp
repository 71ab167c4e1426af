// Bound-state search: the 4x4 matching matrix at r = 1, its determinant,
// energy roots below v*, coefficient recovery and normalisation.
#pragma once

#include <array>
#include <optional>
#include <vector>

#include "qdot/model.hpp"
#include "qdot/radial_basis.hpp"

namespace qdot {

/// Rows (f, g, f', g') at r = 1; columns (1-, 1+, -(2-), -(2+)), each
/// divided by its largest absolute entry.
struct MatchMatrix {
    std::array<std::array<double, 4>, 4> entries{};
    std::array<double, 4> column_scales{1.0, 1.0, 1.0, 1.0};
    double outer_log_scale = 0.0;  // common exp() factor removed from the outer columns

    double determinant() const;
};

enum class SignConvention {
    negative_lead,   // c1- < 0
    first_positive,  // first nonzero coefficient > 0
};

struct ScanConfig {
    std::optional<double> eps_lo;  // default: min(0, -4 s b - a^2/2), kept above the interior branch point
    std::optional<double> eps_hi;  // default: v* - 1e-6
    int grid_n = 2000;
    double root_tol = 1e-9;
    double pole_guard = 1e6;
    SignConvention sign = SignConvention::negative_lead;

    void validate() const;
};

struct EnergyLevel {
    double eps = 0.0;
    Coefficients coeffs;
    double norm_constant = 0.0;
    double continuity_residual = 0.0;
    int level_index = 0;
};

struct NormalizedCoefficients {
    Coefficients coeffs;
    double norm_constant = 0.0;
};

struct ScanWindow {
    double lo = 0.0;
    double hi = 0.0;
    bool empty() const { return !(lo < hi); }
};

/// Energy window searched for a given parameter set.
ScanWindow scan_window(const DotParams& p, const ScanConfig& cfg);

MatchMatrix build_t4(const DotParams& p, double eps, const EvalControl& ctrl = {});

double det_t4(const DotParams& p, double eps, const EvalControl& ctrl = {});

/// True when an interior denominator changes sign inside [lo, hi]; the pole
/// location is returned through `where`.
bool pole_between(const DotParams& p, double lo, double hi, double* where = nullptr);

/// Solves the first three matching rows with c1- = 1, falling back to the
/// null vector of T4 when that 3x3 block is singular.
Coefficients match_coefficients(const DotParams& p, double eps, const EvalControl& ctrl = {});

/// Integral of (u^2 + w^2) r over [0, inf).
double norm_integral(const DotParams& p, double eps, const Coefficients& c, const EvalControl& ctrl = {});

NormalizedCoefficients normalize(const DotParams& p, double eps, const Coefficients& c,
                                 SignConvention sign = SignConvention::negative_lead,
                                 const EvalControl& ctrl = {});

double continuity_residual(const DotParams& p, const EnergyLevel& level, const EvalControl& ctrl = {});

/// Scans det T4 on a uniform grid, splits cells at interior-denominator
/// poles, bisects each sign change and returns the normalised levels in
/// ascending order.
std::vector<EnergyLevel> find_levels(const DotParams& p, const ScanConfig& cfg = {}, const EvalControl& ctrl = {});

}  // namespace qdot
