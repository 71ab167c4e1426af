#include <array>
#include <cmath>
#include <numbers>

#include "qdot/errors.hpp"
#include "qdot/special.hpp"

namespace qdot {
namespace {

constexpr double kStirlingMin = 15.0;

// B_{2k} / (2k (2k-1)), k = 1..8
constexpr std::array<double, 8> kStirling = {
    1.0 / 12.0,          -1.0 / 360.0,  1.0 / 1260.0,  -1.0 / 1680.0,
    1.0 / 1188.0,        -691.0 / 360360.0, 1.0 / 156.0, -3617.0 / 122400.0};

Complex stirling(Complex z)
{
    const Complex inv = 1.0 / z;
    const Complex inv2 = inv * inv;
    Complex series = 0.0;
    Complex power = inv;
    for (double c : kStirling) {
        series += c * power;
        power *= inv2;
    }
    return (z - 0.5) * std::log(z) - z + 0.5 * std::log(2.0 * std::numbers::pi) + series;
}

void check_pole(Complex z)
{
    if (z.real() > 0.5) {
        return;
    }
    const double nearest = std::round(z.real());
    if (nearest <= 0.0 && std::abs(z - Complex(nearest, 0.0)) < 1e-12) {
        throw DomainError("gamma: argument at a pole (non-positive integer)");
    }
}

}  // namespace

Complex log_gamma(Complex z)
{
    check_pole(z);
    if (z.real() < 0.5) {
        // reflection: Gamma(z) Gamma(1-z) = pi / sin(pi z)
        const Complex s = std::sin(std::numbers::pi * z);
        return std::log(std::numbers::pi) - std::log(s) - log_gamma(1.0 - z);
    }
    if (std::abs(z) >= kStirlingMin) {
        return stirling(z);
    }
    Complex product = 1.0;
    Complex shifted = z;
    while (std::abs(shifted) < kStirlingMin) {
        product *= shifted;
        shifted += 1.0;
    }
    return stirling(shifted) - std::log(product);
}

Complex gamma_complex(Complex z)
{
    return std::exp(log_gamma(z));
}

}  // namespace qdot
