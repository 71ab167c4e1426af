#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "qdot/errors.hpp"
#include "qdot/special.hpp"

namespace qdot {
namespace {

// Ascending series, accurate while x is small compared with the order scale.
double bessel_j_series(int n, double x)
{
    const double half = 0.5 * x;
    double term = 1.0;
    for (int k = 1; k <= n; ++k) {
        term *= half / k;
    }
    double sum = term;
    const double q = -half * half;
    for (int k = 1; k < 500; ++k) {
        term *= q / (k * static_cast<double>(n + k));
        sum += term;
        if (std::abs(term) < 1e-17 * std::abs(sum)) {
            break;
        }
    }
    return sum;
}

}  // namespace

double bessel_j(int n, double x)
{
    if (n < 0 || !(x >= 0.0)) {
        throw DomainError("bessel_j: need n >= 0 and x >= 0");
    }
    if (x == 0.0) {
        return n == 0 ? 1.0 : 0.0;
    }
    if (x < 1.0) {
        return bessel_j_series(n, x);
    }
    // Miller's backward recurrence normalised by J0 + 2 sum J_{2k} = 1.
    const int start = 2 * ((std::max(n, static_cast<int>(x)) + 30
                            + static_cast<int>(std::sqrt(60.0 * std::max(n, static_cast<int>(x))))) / 2);
    double j_next = 0.0;
    double j = 1e-300;
    double norm = 0.0;
    double result = 0.0;
    for (int k = start; k > 0; --k) {
        const double j_prev = 2.0 * k / x * j - j_next;
        j_next = j;
        j = j_prev;
        if (std::abs(j) > 1e250) {
            j *= 1e-250;
            j_next *= 1e-250;
            norm *= 1e-250;
            result *= 1e-250;
        }
        if (k - 1 == n) {
            result = j;
        }
        if ((k - 1) % 2 == 0 && k - 1 > 0) {
            norm += 2.0 * j;
        }
    }
    norm += j;  // J0
    return result / norm;
}

double bessel_j_signed(int n, double x)
{
    if (n >= 0) {
        return bessel_j(n, x);
    }
    const double v = bessel_j(-n, x);
    return (n % 2 == 0) ? v : -v;
}

Complex bessel_k_complex(int n, Complex z, const EvalControl& ctrl)
{
    if (n < 0) {
        throw DomainError("bessel_k_complex: order must be non-negative");
    }
    if (!(z.real() > 0.0)) {
        throw DomainError("bessel_k_complex: requires Re z > 0");
    }
    const ScaledComplex u = tricomi_u_scaled(Complex(n + 0.5, 0.0), 2 * n + 1, 2.0 * z, ctrl);
    const Complex log_prefactor = 0.5 * std::log(std::numbers::pi) + static_cast<double>(n) * std::log(2.0 * z) - z;
    return u.mantissa * std::exp(log_prefactor + u.log_scale);
}

}  // namespace qdot
