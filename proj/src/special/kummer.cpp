#include <algorithm>
#include <cmath>
#include <sstream>

#include "qdot/errors.hpp"
#include "qdot/special.hpp"

namespace qdot {

void EvalControl::validate() const
{
    if (!(rel_tol > 0.0) || max_terms < 1 || quad_points < 8) {
        throw DomainError("EvalControl: need rel_tol > 0, max_terms >= 1, quad_points >= 8");
    }
}

double kummer_m(double alpha, int beta, double xi, const EvalControl& ctrl)
{
    if (beta < 1) {
        throw DomainError("kummer_m: beta must be a positive integer");
    }
    if (!(xi >= 0.0) || !std::isfinite(alpha)) {
        throw DomainError("kummer_m: need finite alpha and xi >= 0");
    }
    double sum = 1.0;
    double term = 1.0;
    double largest = 1.0;
    for (int n = 0; n < ctrl.max_terms; ++n) {
        const double ratio = (alpha + n) * xi / ((beta + n) * (n + 1.0));
        term *= ratio;
        sum += term;
        if (term == 0.0) {
            return sum;  // terminating series: alpha a non-positive integer
        }
        largest = std::max(largest, std::abs(term));
        // past the hump of a negative alpha the terms shrink geometrically;
        // below 1e-17 of the largest term nothing more is resolvable
        if (n + 1 > -alpha && std::abs(ratio) < 0.5
            && (std::abs(term) <= ctrl.rel_tol * 0.1 * std::abs(sum)
                || std::abs(term) <= 1e-17 * largest)) {
            return sum;
        }
    }
    std::ostringstream msg;
    msg << "kummer_m: no convergence after " << ctrl.max_terms << " terms (alpha=" << alpha
        << ", beta=" << beta << ", xi=" << xi << ", partial sum=" << sum
        << ", last term=" << term << ")";
    throw EvaluationError(msg.str(), sum, ctrl.max_terms);
}

double kummer_m_deriv(double alpha, int beta, double xi, const EvalControl& ctrl)
{
    if (alpha == 0.0) {
        if (beta < 1 || !(xi >= 0.0)) {
            throw DomainError("kummer_m_deriv: need beta >= 1 and xi >= 0");
        }
        return 0.0;
    }
    return alpha / beta * kummer_m(alpha + 1.0, beta + 1, xi, ctrl);
}

}  // namespace qdot
