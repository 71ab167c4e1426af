#include <doctest.h>

#include <cmath>

#include "qdot/errors.hpp"
#include "qdot/model.hpp"

namespace {

qdot::DotParams dot(int m, double v, double a, double b, double s = 0.05)
{
    return {m, v, a, b, s};
}

qdot::PhysicalInputs gaas_like()
{
    qdot::PhysicalInputs in;
    in.rho0 = 2.0e-6;
    in.E = 3.0e-15;
    in.V = 8.0e-14;
    in.a_R = 4.0e3;
    in.B = 1.5e4;
    in.M_eff = 0.067 * in.M_e;
    in.g = -0.44;
    return in;
}

}  // namespace

TEST_CASE("DotParams validation")
{
    CHECK_NOTHROW(dot(1, 50, 1, 0).validate());
    CHECK_THROWS_AS(dot(1, 0, 1, 1).validate(), qdot::DomainError);
    CHECK_THROWS_AS(dot(1, 50, 0, 1).validate(), qdot::DomainError);
    CHECK_THROWS_AS(dot(1, 50, 1, -0.1).validate(), qdot::DomainError);
    CHECK_THROWS_AS(dot(1, 50, 1, NAN).validate(), qdot::DomainError);
}

TEST_CASE("bound_threshold arithmetic")
{
    CHECK(qdot::bound_threshold(dot(1, 100, 2, 5)) == doctest::Approx(78.75).epsilon(1e-15));
    CHECK(qdot::bound_threshold(dot(1, 50, 1, 3)) == doctest::Approx(20.59).epsilon(1e-15));
    CHECK(qdot::bound_threshold(dot(-2, 50, 1, 0)) == 50.0 - 0.25);
    CHECK_THROWS_AS(qdot::bound_threshold(dot(1, 50, 0, 1)), qdot::DomainError);
}

TEST_CASE("bound_threshold monotonicity")
{
    double prev = qdot::bound_threshold(dot(1, 50, 1.5, 0));
    for (double b = 0.25; b <= 6.0; b += 0.25) {
        const double cur = qdot::bound_threshold(dot(1, 50, 1.5, b));
        CHECK(cur < prev);
        prev = cur;
    }
    CHECK(qdot::bound_threshold(dot(1, 60, 1.5, 2)) > qdot::bound_threshold(dot(1, 50, 1.5, 2)));
}

TEST_CASE("k1_pair")
{
    const auto half = qdot::k1_pair(dot(1, 50, 2, 3, 0.5), 0.0);
    CHECK(half.k_plus == doctest::Approx(4.0 / 12.0).epsilon(1e-15));
    CHECK(std::abs(half.k_minus) < 1e-15);

    const auto p = dot(1, 100, 2, 5);
    const auto k = qdot::k1_pair(p, 26.07);
    CHECK(k.k_plus == doctest::Approx(2.0914).epsilon(1e-4));
    CHECK(k.k_minus == doctest::Approx(0.7156).epsilon(1e-3));

    const double radicand = 26.07 + 1.0 + std::pow(4.0 * 5 / 2, 2) * std::pow(0.05 - 0.5, 2);
    CHECK(k.k_plus - k.k_minus == doctest::Approx(2.0 / 10.0 * std::sqrt(radicand)).epsilon(1e-14));
    CHECK_THROWS_AS(qdot::k1_pair(dot(1, 50, 1, 0), 1.0), qdot::DomainError);
}

TEST_CASE("k1_pair ordering")
{
    for (double eps : {-0.5, 0.0, 3.0, 17.5, 60.0}) {
        for (double b : {0.5, 2.0, 6.0}) {
            const auto k = qdot::k1_pair(dot(-2, 100, 1, b), eps);
            CHECK(k.k_plus >= k.k_minus);
        }
    }
}

TEST_CASE("k2_pair")
{
    const auto p = dot(1, 100, 2, 5);
    const auto k = qdot::k2_pair(p, 53.17);
    CHECK(k.k_minus.real() == doctest::Approx(-2.2415).epsilon(1e-14));
    CHECK(k.k_plus.real() == k.k_minus.real());
    CHECK(k.k_plus.imag() == -k.k_minus.imag());
    CHECK(std::abs((k.k_plus * k.k_minus).imag()) < 1e-15);

    const double vstar = qdot::bound_threshold(p);
    const auto near = qdot::k2_pair(p, vstar - 1e-10);
    CHECK(std::abs(near.k_plus.imag()) < 1e-5);
    CHECK_THROWS_AS(qdot::k2_pair(p, vstar + 0.1), qdot::BoundStateError);
}

TEST_CASE("dimensionless map")
{
    const auto in = gaas_like();
    auto zero = in;
    zero.E = 0.0;
    CHECK(qdot::to_dimensionless(zero).eps == 0.0);

    auto wide = in;
    wide.rho0 *= 2.0;
    const auto base = qdot::to_dimensionless(in);
    const auto doubled = qdot::to_dimensionless(wide);
    CHECK(doubled.eps == doctest::Approx(4.0 * base.eps).epsilon(1e-14));
    CHECK(doubled.params.b == doctest::Approx(4.0 * base.params.b).epsilon(1e-14));
    CHECK(doubled.params.a == doctest::Approx(2.0 * base.params.a).epsilon(1e-14));

    const auto back = qdot::to_physical(base, in);
    CHECK(back.E == doctest::Approx(in.E).epsilon(1e-12));
    CHECK(back.V == doctest::Approx(in.V).epsilon(1e-12));
    CHECK(back.a_R == doctest::Approx(in.a_R).epsilon(1e-12));
    CHECK(back.B == doctest::Approx(in.B).epsilon(1e-12));
    CHECK(back.g == doctest::Approx(in.g).epsilon(1e-12));

    auto bad = in;
    bad.M_eff = 0.0;
    CHECK_THROWS_AS(qdot::to_dimensionless(bad), qdot::DomainError);
}
