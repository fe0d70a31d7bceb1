#include <doctest.h>

#include <cmath>

#include "divkit/sqrt_rational.hpp"

using namespace divkit;

namespace {

SqrtRational k0_like() {
    // (x - 1)^2 / sqrt(x)
    const SqrtRational xm1 = SqrtRational::x() - SqrtRational::constant(1);
    return (xm1 * xm1).over(1, 0);
}

}  // namespace

TEST_SUITE("sqrt_rational") {

TEST_CASE("evaluation of simple forms") {
    CHECK(SqrtRational::constant(Rational(3, 4))(2.0) == doctest::Approx(0.75));
    CHECK(SqrtRational::sqrt_x()(9.0) == doctest::Approx(3.0));
    CHECK(SqrtRational::x()(9.0) == doctest::Approx(9.0));
    CHECK(k0_like()(4.0) == doctest::Approx(4.5));
    const SqrtRational r = SqrtRational::constant(1).over(0, 2);  // 1 / (1 + x)^2
    CHECK(r(3.0) == doctest::Approx(1.0 / 16));
}

TEST_CASE("arithmetic") {
    const SqrtRational s = SqrtRational::sqrt_x();
    const SqrtRational one = SqrtRational::constant(1);
    const SqrtRational diff = (s - one).pow(2) - (SqrtRational::x() - s * Rational(2) + one);
    CHECK(diff.is_zero());
    CHECK((s * s - SqrtRational::x()).is_zero());
    CHECK(((s + one) * (s - one))(5.0) == doctest::Approx(4.0));
}

TEST_CASE("derivative") {
    const SqrtRational x32 = SqrtRational::x() * SqrtRational::sqrt_x();
    CHECK((x32.derivative() - SqrtRational::sqrt_x() * Rational(3, 2)).is_zero());
    // d/dx 1/(1+x) = -1/(1+x)^2
    const SqrtRational inv = SqrtRational::constant(1).over(0, 1);
    CHECK((inv.derivative() + SqrtRational::constant(1).over(0, 2)).is_zero());
    // K0'' = (3x^2 + 2x + 3) / (4 x^{5/2})
    const SqrtRational second = k0_like().derivative().derivative();
    for (double x : {0.1, 0.7, 2.0, 30.0}) {
        CHECK(second(x) == doctest::Approx((3 * x * x + 2 * x + 3) / (4 * std::pow(x, 2.5))).epsilon(1e-14));
    }
}

TEST_CASE("root at one is factored out") {
    const SqrtRational f = k0_like();
    CHECK(f.order_at_one() == 2);
    CHECK(f.leading_at_one() == Rational(1));
    const SqrtRational s1 = SqrtRational::sqrt_x() - SqrtRational::constant(1);
    const SqrtRational quartic = s1.pow(4).over(1, 0) * Rational(1, 8);
    CHECK(quartic.order_at_one() == 4);
    CHECK(quartic.leading_at_one() == Rational(1, 128));
    // Full relative precision close to x = 1.
    const long double xm1 = 1e-7L;
    const long double v = quartic(1.0L + xm1, xm1);
    const long double s = std::sqrt(1.0L + xm1);
    const long double expected = std::pow(xm1 / (s + 1), 4) / (8 * s);
    CHECK(std::abs(v - expected) <= 1e-15L * expected);
}

}
