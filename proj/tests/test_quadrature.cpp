#include <catch2/catch_amalgamated.hpp>

#include "wormhardy/quadrature.hpp"

using namespace wormhardy;
using Catch::Approx;

TEST_CASE("sech integral oracle: Int sech(a xi) dxi = pi / a") {
    for (double a : {1.0, pi, 2.5, 8.0}) {
        const double got = integrate_real(
            [a](double x) { return 1.0 / std::cosh(a * x); }, -60.0 / a, 60.0 / a, 1e-14);
        REQUIRE(got == Approx(pi / a).epsilon(1e-12));
    }
}

TEST_CASE("gaussian integral") {
    const double got = integrate_real([](double x) { return std::exp(-x * x); }, -12.0, 12.0, 1e-14);
    REQUIRE(got == Approx(std::sqrt(pi)).epsilon(1e-13));
}

TEST_CASE("oscillatory complex integrand") {
    // Int e^{i b x} e^{-x^2} dx = sqrt(pi) e^{-b^2/4}
    const double b = 3.0;
    const cplx got = integrate(
        [b](double x) { return std::exp(-x * x) * cplx(std::cos(b * x), std::sin(b * x)); },
        -12.0, 12.0, 1e-14);
    REQUIRE(std::abs(got - std::sqrt(pi) * std::exp(-b * b / 4)) < 1e-13);
}

TEST_CASE("refinement past the depth limit throws") {
    REQUIRE_THROWS_AS(
        integrate_real([](double x) { return std::pow(x, -0.95); }, 0.0, 1.0, 1e-15, 40),
        quadrature_no_convergence);
}
