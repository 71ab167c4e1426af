// Scalar root refinement shared by the closed-form solver and the oracle.
#pragma once

#include <algorithm>
#include <cmath>
#include <limits>

namespace qdot {

// Bisects a sign change of `fn` on [lo, hi].
template <class Fn>
double bisect_sign(Fn fn, double lo, double hi)
{
    double flo = fn(lo);
    for (int it = 0; it < 200 && hi - lo > 4.0 * std::numeric_limits<double>::epsilon() * std::abs(hi); ++it) {
        const double mid = 0.5 * (lo + hi);
        const double fm = fn(mid);
        if ((fm < 0.0) == (flo < 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

// Bisection to `tol`, then Illinois regula falsi inside the final bracket.
template <class Fn>
double refine_root(Fn fn, double lo, double hi, double flo, double fhi, double tol)
{
    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        const double fm = fn(mid);
        if (fm == 0.0) {
            return mid;
        }
        if ((fm < 0.0) == (flo < 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
            fhi = fm;
        }
    }
    int side = 0;
    for (int it = 0; it < 40; ++it) {
        const double x = (lo * fhi - hi * flo) / (fhi - flo);
        if (!(x > lo && x < hi)) {
            break;
        }
        const double fx = fn(x);
        if (fx == 0.0) {
            return x;
        }
        if ((fx < 0.0) == (flo < 0.0)) {
            lo = x;
            flo = fx;
            if (side == -1) {
                fhi *= 0.5;
            }
            side = -1;
        } else {
            hi = x;
            fhi = fx;
            if (side == 1) {
                flo *= 0.5;
            }
            side = 1;
        }
        if (hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(x))) {
            break;
        }
    }
    return std::abs(flo) < std::abs(fhi) ? lo : hi;
}

}  // namespace qdot
