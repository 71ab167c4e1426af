#include <doctest.h>

#include <cmath>
#include <numbers>

#include "identity_suite.hpp"
#include "qdot/errors.hpp"
#include "qdot/special.hpp"

using qdot::Complex;

namespace {

// Reference values from mpmath at 30 digits.
struct UCase {
    Complex alpha;
    int beta;
    Complex z;
    Complex expected;
};

const UCase kUReference[] = {
    {{1.5, 0.7}, 2, {0.8, 0.3}, {0.5122147215444895, -0.93376116309393196}},
    {{0.3, -2.1}, 1, {2.5, 0.0}, {-1.771410853442848, 0.84168871736777991}},
    {{-2.7, 3.3}, 4, {1.2, -0.4}, {-9290.9404230674305, -8127.6660386369451}},
    {{2.0, 0.0}, 1, {0.05, 0.0}, {1.7241518672486439, 0.0}},
};

double rel(Complex got, Complex want) { return std::abs(got - want) / std::abs(want); }

}  // namespace

TEST_CASE("kummer_m closed forms")
{
    CHECK(qdot::kummer_m(3.7, 2, 0.0) == 1.0);
    CHECK(qdot::kummer_m(1.0, 1, 1.0) == doctest::Approx(std::numbers::e).epsilon(1e-14));
    CHECK(qdot::kummer_m(-1.0, 2, 3.0) == doctest::Approx(-0.5).epsilon(1e-15));
    CHECK(qdot::kummer_m(2.5, 3, 0.8) == doctest::Approx(1.9680053812053133).epsilon(1e-13));
    CHECK(qdot::kummer_m(-3.3, 2, 7.5) == doctest::Approx(-0.60832181242738398).epsilon(1e-12));
}

TEST_CASE("kummer_m terminating series is the exact polynomial")
{
    // M(-3, 2, x) = 1 - 3x/2 + x^2/2 - x^3/24
    for (double x : {0.0, 0.5, 1.75, 4.0, 9.5}) {
        const double poly = 1.0 - 1.5 * x + 0.5 * x * x - x * x * x / 24.0;
        CHECK(qdot::kummer_m(-3.0, 2, x) == doctest::Approx(poly).epsilon(1e-14));
    }
}

TEST_CASE("kummer_m_deriv")
{
    CHECK(qdot::kummer_m_deriv(0.0, 3, 4.2) == 0.0);
    CHECK(qdot::kummer_m_deriv(1.0, 1, 1.0) == doctest::Approx(std::numbers::e).epsilon(1e-14));
    const double h = 1e-4;
    const double fd = (qdot::kummer_m(2.5, 3, 0.8 + h) - qdot::kummer_m(2.5, 3, 0.8 - h)) / (2 * h);
    CHECK(std::abs(qdot::kummer_m_deriv(2.5, 3, 0.8) - fd) < 1e-8);
}

TEST_CASE("kummer_m rejects bad arguments")
{
    CHECK_THROWS_AS(qdot::kummer_m(1.0, 0, 1.0), qdot::DomainError);
    CHECK_THROWS_AS(qdot::kummer_m(1.0, 2, -0.1), qdot::DomainError);
    qdot::EvalControl tight;
    tight.max_terms = 3;
    CHECK_THROWS_AS(qdot::kummer_m(0.5, 1, 30.0, tight), qdot::EvaluationError);
}

TEST_CASE("gamma_complex")
{
    CHECK(std::abs(qdot::gamma_complex(1.0) - 1.0) < 1e-14);
    CHECK(std::abs(qdot::gamma_complex(0.5) - std::sqrt(std::numbers::pi)) < 1e-13);
    CHECK(rel(qdot::gamma_complex({1.0, 1.0}), {0.49801566811835604, -0.15494982830181069}) < 1e-13);
    CHECK(rel(qdot::gamma_complex({-2.5, 0.3}), {-0.61382299743774149, -0.21123261493704178}) < 1e-12);
    // recursion against the base value
    const Complex z(0.37, 1.9);
    CHECK(rel(qdot::gamma_complex(z + 1.0), z * qdot::gamma_complex(z)) < 1e-13);
    CHECK_THROWS_AS(qdot::gamma_complex(-2.0), qdot::DomainError);
}

TEST_CASE("tricomi_u reference values")
{
    CHECK(std::abs(qdot::tricomi_u(0.0, 3, {1.7, 0.2}) - 1.0) < 1e-14);
    CHECK(rel(qdot::tricomi_u(1.0, 1, 1.0), 0.59634736232319407) < 1e-12);
    for (const auto& c : kUReference) {
        CAPTURE(c.alpha);
        CHECK(rel(qdot::tricomi_u(c.alpha, c.beta, c.z), c.expected) < 1e-11);
    }
}

TEST_CASE("tricomi_u at large imaginary alpha and tiny argument")
{
    // Weak-field exterior regime: large Im alpha with the argument near zero.
    const auto s = qdot::tricomi_u_scaled({-5.5, 124.0}, 3, 0.001);
    const Complex want(4.332172028219627e+102, 3.6076626862085525e+102);
    CHECK(rel(s.value(), want) < 1e-10);
}

TEST_CASE("tricomi_u conjugation symmetry")
{
    const Complex a(1.3, 2.4);
    for (double x : {0.4, 1.0, 3.5}) {
        const Complex u = qdot::tricomi_u(a, 2, x);
        const Complex uc = qdot::tricomi_u(std::conj(a), 2, x);
        CHECK(std::abs(uc - std::conj(u)) <= 1e-12 * std::abs(u));
    }
    const Complex z(0.9, 0.6);
    const Complex u = qdot::tricomi_u(a, 3, z);
    CHECK(std::abs(qdot::tricomi_u(std::conj(a), 3, std::conj(z)) - std::conj(u)) <= 1e-12 * std::abs(u));
}

TEST_CASE("tricomi_u_deriv")
{
    CHECK(std::abs(qdot::tricomi_u_deriv(0.0, 2, 1.4)) == 0.0);
    const double h = 1e-4;
    const Complex fd = (qdot::tricomi_u(1.0, 1, 1.0 + h) - qdot::tricomi_u(1.0, 1, 1.0 - h)) / (2 * h);
    CHECK(std::abs(qdot::tricomi_u_deriv(1.0, 1, 1.0) - fd) < 1e-7);
}

TEST_CASE("tricomi_family agrees with separate evaluations")
{
    const Complex a(-1.8, 4.2);
    const Complex z(0.7, 0.0);
    const auto fam = qdot::tricomi_family(a, 2, z);
    const double sc = std::exp(fam.log_scale);
    CHECK(rel(fam.u * sc, qdot::tricomi_u(a, 2, z)) < 1e-11);
    CHECK(rel(fam.u_next * sc, qdot::tricomi_u(a, 3, z)) < 1e-11);
    CHECK(rel(fam.du * sc, -a * qdot::tricomi_u(a + 1.0, 3, z)) < 1e-11);
    CHECK(rel(fam.du_next * sc, -a * qdot::tricomi_u(a + 1.0, 4, z)) < 1e-11);
}

TEST_CASE("tricomi_u domain")
{
    CHECK_THROWS_AS(qdot::tricomi_u(1.0, 1, {0.0, 1.0}), qdot::DomainError);
    CHECK_THROWS_AS(qdot::tricomi_u(1.0, 1, -2.0), qdot::DomainError);
}

TEST_CASE("bessel_j")
{
    CHECK(qdot::bessel_j(0, 0.0) == 1.0);
    CHECK(qdot::bessel_j(1, 0.0) == 0.0);
    CHECK(std::abs(qdot::bessel_j(0, 2.404825557)) < 1e-8);
    CHECK(qdot::bessel_j(3, 7.25) == doctest::Approx(-0.21924533340150819).epsilon(1e-12));
    CHECK(qdot::bessel_j_signed(-3, 7.25) == doctest::Approx(0.21924533340150819).epsilon(1e-12));
}

TEST_CASE("bessel_k_complex")
{
    CHECK(rel(qdot::bessel_k_complex(0, 1.0), 0.42102443824070833) < 1e-12);
    const Complex z(2.0, 1.0);
    const Complex k1 = qdot::bessel_k_complex(1, z);
    CHECK(rel(k1, {0.036291592400427046, -0.12406383457283476}) < 1e-12);
    CHECK(std::abs(qdot::bessel_k_complex(1, std::conj(z)) - std::conj(k1)) <= 1e-12 * std::abs(k1));
    CHECK(std::abs(qdot::bessel_k_complex(0, 10.0)) < std::abs(qdot::bessel_k_complex(0, 5.0)));
    CHECK(std::abs(qdot::bessel_k_complex(0, 5.0)) < std::abs(qdot::bessel_k_complex(0, 1.0)));
}

TEST_CASE("contiguous relations at random points")
{
    const auto rep = qdot::testing::run_identity_suite(200, 20240611);
    CHECK(rep.worst_m_first < 1e-10);
    CHECK(rep.worst_m_second < 1e-10);
    CHECK(rep.worst_u_first < 1e-9);
    CHECK(rep.worst_u_second < 1e-9);
}

TEST_CASE("EvalControl validation")
{
    qdot::EvalControl c;
    c.rel_tol = 0.0;
    CHECK_THROWS_AS(c.validate(), qdot::DomainError);
    c = {};
    c.quad_points = 4;
    CHECK_THROWS_AS(c.validate(), qdot::DomainError);
}
