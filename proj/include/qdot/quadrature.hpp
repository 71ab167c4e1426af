// Quadrature rules: Gauss-Legendre of arbitrary order and the 7/15
// Gauss-Kronrod pair used by the adaptive integrators.
#pragma once

#include <array>
#include <vector>

namespace qdot {

/// Gauss-Legendre nodes and weights on [-1, 1], nodes ascending.
struct GaussRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

GaussRule gauss_legendre(int n);

namespace kronrod {

inline constexpr int size = 15;

// Abscissae of the 15-point Kronrod rule on [0, 1]; the odd entries
// (1, 3, 5, 7) are the 7-point Gauss nodes. Entry 7 is the centre.
inline constexpr std::array<double, 8> nodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0};

inline constexpr std::array<double, 8> kronrod_weights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};

inline constexpr std::array<double, 4> gauss_weights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

}  // namespace kronrod
}  // namespace qdot
