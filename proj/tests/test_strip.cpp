#include <catch2/catch_amalgamated.hpp>

#include "wormhardy/checks.hpp"
#include "wormhardy/strip.hpp"

using namespace wormhardy;
using Catch::Approx;

namespace {
const Grid1D g1{12.0, 1024};

std::vector<cplx> gaussian_hat() {
    std::vector<cplx> f(std::size_t(g1.nx), cplx(0, 0));
    for (int k = 0; k < g1.nx; ++k) {
        const double xi = g1.xi(k);
        if (std::abs(xi) <= 40.0) f[std::size_t(k)] = std::exp(-xi * xi);
    }
    return f;
}

StripBoundaryPair pw_pair(const StripParams& strip, const std::vector<cplx>& fhat) {
    StripBoundaryPair phi = make_strip_pair(g1);
    std::vector<cplx> wp(std::size_t(g1.nx)), wm(std::size_t(g1.nx));
    for (int k = 0; k < g1.nx; ++k) {
        wp[std::size_t(k)] = scaled_mul(-strip.beta_strip * g1.xi(k), fhat[std::size_t(k)]);
        wm[std::size_t(k)] = scaled_mul(+strip.beta_strip * g1.xi(k), fhat[std::size_t(k)]);
    }
    phi.plus = profile_to_physical(g1, std::move(wp));
    phi.minus = profile_to_physical(g1, std::move(wm));
    return phi;
}
} // namespace

TEST_CASE("pw_extend at the origin reproduces the gaussian integral") {
    const auto strip = make_strip(2.0);
    const auto f = gaussian_hat();
    const cplx v = pw_extend(g1, f, cplx(0, 0), strip);
    REQUIRE(std::abs(v - 1.0 / (2.0 * std::sqrt(pi))) < 1e-13);
}

TEST_CASE("pw_extend on the real line matches the inverse transform") {
    const auto strip = make_strip(1.5);
    const auto f = gaussian_hat();
    const auto phys = profile_to_physical(g1, f);
    for (int m : {100, 512, 700}) {
        const cplx v = pw_extend(g1, f, cplx(g1.x(m), 0.0), strip);
        REQUIRE(std::abs(v - phys[std::size_t(m)]) < 1e-12);
    }
}

TEST_CASE("pw_extend guards") {
    const auto strip = make_strip(1.0);
    std::vector<cplx> flat(std::size_t(g1.nx), cplx(1.0, 0.0));
    REQUIRE_THROWS_AS(pw_extend(g1, flat, cplx(0, 0), strip), tail_not_decayed);
    REQUIRE_THROWS_AS(pw_extend(g1, gaussian_hat(), cplx(0, 1.5), strip), param_out_of_range);
    std::vector<cplx> zero(std::size_t(g1.nx), cplx(0, 0));
    REQUIRE(std::abs(pw_extend(g1, zero, cplx(0.3, 0.2), strip)) == 0.0);
}

TEST_CASE("strip kernel closed form is calibrated to the integral") {
    const auto strip = make_strip(pi / 2);
    const cplx at0 = strip_kernel(strip, cplx(0, 0), cplx(0, 0), StripKernelMode::integral);
    REQUIRE(std::abs(at0 - 1.0 / (4.0 * pi)) < 1e-13);

    const auto strip2 = make_strip(2.2);
    const cplx diag = strip_kernel(strip2, cplx(0.7, -0.4), cplx(0.7, 0.4),
                                   StripKernelMode::integral); // w - conj z = 0
    REQUIRE(std::abs(diag - 1.0 / (8.0 * 2.2)) < 1e-13);

    gaussian_rng rng(5);
    for (int q = 0; q < 20; ++q) {
        const cplx w(4 * rng.uniform() - 2, 2.2 * (1.4 * rng.uniform() - 0.7));
        const cplx z(4 * rng.uniform() - 2, 2.2 * (1.4 * rng.uniform() - 0.7));
        const cplx a = strip_kernel(strip2, w, z, StripKernelMode::integral);
        const cplx b = strip_kernel(strip2, w, z, StripKernelMode::closed_form);
        REQUIRE(std::abs(a - b) < 1e-12);
    }
}

TEST_CASE("strip kernel blows up toward the singular line") {
    // Im(w - conj z) = Im w + Im z -> 2 beta is the pole of the sech
    const auto strip = make_strip(1.0);
    const double b = strip.beta_strip;
    const cplx far = strip_kernel(strip, cplx(0, 0.1), cplx(0, 0.1), StripKernelMode::closed_form);
    const cplx near_pole =
        strip_kernel(strip, cplx(0, b - 1e-4), cplx(0, b - 1e-4), StripKernelMode::closed_form);
    REQUIRE(std::abs(near_pole) > 100.0 * std::abs(far));
}

TEST_CASE("strip projection reproduces PW extensions") {
    const auto strip = make_strip(1.8);
    const auto f = gaussian_hat();
    const auto phi = pw_pair(strip, f);
    gaussian_rng rng(6);
    for (int q = 0; q < 10; ++q) {
        const cplx z(6 * rng.uniform() - 3, 1.8 * (1.8 * rng.uniform() - 0.9));
        const cplx a = strip_project(phi, z, strip);
        const cplx b = pw_extend(g1, f, z, strip);
        REQUIRE(std::abs(a - b) <= 1e-10 * std::max(1.0, std::abs(b)));
    }
    const auto zero = make_strip_pair(g1);
    REQUIRE(std::abs(strip_project(zero, cplx(0.1, 0.2), strip)) == 0.0);
}

TEST_CASE("strip projection of even real data is real on the imaginary axis") {
    const auto strip = make_strip(1.3);
    StripBoundaryPair phi = make_strip_pair(g1);
    const auto even = profile_to_physical(g1, gaussian_hat());
    phi.plus = even;
    phi.minus = even;
    const cplx v = strip_project(phi, cplx(0.0, 0.5), strip);
    REQUIRE(std::abs(v.imag()) < 1e-13 * std::abs(v.real()));
}

TEST_CASE("strip boundary projector is an orthogonal projection") {
    const auto strip = make_strip(1.1);
    for (double xi : {-3.0, -0.4, 0.0, 1.7, 120.0}) {
        const auto s = strip_boundary_symbol(strip.beta_strip, xi);
        // [[a, b], [b, c]] idempotent: a^2 + b^2 = a, b(a + c) = b, b^2 + c^2 = c
        REQUIRE(std::abs(s[0] * s[0] + s[1] * s[1] - s[0]) < 1e-14);
        REQUIRE(std::abs(s[1] * (s[0] + s[2]) - s[1]) < 1e-14);
        REQUIRE(std::abs(s[1] * s[1] + s[2] * s[2] - s[2]) < 1e-14);
        REQUIRE(s[0] > 0.0);
        REQUIRE(s[0] < 1.0);
    }

    gaussian_rng rng(7);
    StripBoundaryPair phi = make_strip_pair(g1);
    phi.plus = profile_to_physical(g1, checks::random_profile(g1, rng, 10.0));
    phi.minus = profile_to_physical(g1, checks::random_profile(g1, rng, 10.0));
    const auto s1 = strip_boundary_project(phi, strip);
    const auto s2 = strip_boundary_project(s1, strip);
    double err = 0.0, scale = 0.0;
    for (int k = 0; k < g1.nx; ++k) {
        err = std::max({err, std::abs(s2.plus[std::size_t(k)] - s1.plus[std::size_t(k)]),
                        std::abs(s2.minus[std::size_t(k)] - s1.minus[std::size_t(k)])});
        scale = std::max(scale, std::abs(s1.plus[std::size_t(k)]));
    }
    REQUIRE(err < 1e-11 * scale);
}

TEST_CASE("strip boundary projector fixes PW boundary data") {
    const auto strip = make_strip(1.8);
    const auto phi = pw_pair(strip, gaussian_hat());
    const auto s = strip_boundary_project(phi, strip);
    double err = 0.0, scale = 0.0;
    for (int k = 0; k < g1.nx; ++k) {
        err = std::max({err, std::abs(s.plus[std::size_t(k)] - phi.plus[std::size_t(k)]),
                        std::abs(s.minus[std::size_t(k)] - phi.minus[std::size_t(k)])});
        scale = std::max({scale, std::abs(phi.plus[std::size_t(k)]),
                          std::abs(phi.minus[std::size_t(k)])});
    }
    REQUIRE(err < 1e-10 * scale);
}

TEST_CASE("boundary convergence of interior lines is monotone") {
    const auto strip = make_strip(1.8);
    const auto f = gaussian_hat();
    const auto phi = pw_pair(strip, f);
    double prev = 1e300;
    for (int k = 1; k <= 36; k += 5) {
        const double eps = std::ldexp(1.0, -k);
        const auto line = strip_project_profile(phi, strip.beta_strip - eps, strip);
        double dist2 = 0.0;
        for (int m = 0; m < g1.nx; ++m) dist2 += std::norm(line[std::size_t(m)] - phi.plus[std::size_t(m)]);
        const double dist = std::sqrt(dist2 * g1.dx());
        REQUIRE(dist < prev + 1e-15);
        prev = dist;
    }
    REQUIRE(prev <= 1e-8);
}

TEST_CASE("singular kernel pair values and mass") {
    const auto strip = make_strip(2.0);
    for (double eps : {0.3, 0.02}) {
        REQUIRE(singular_kernel_pair(eps, 0.0, strip).second == 0.0);
        for (double y : {-3.0, -0.2, 0.5, 40.0})
            REQUIRE(singular_kernel_pair(eps, y, strip).first > 0.0);
    }
    REQUIRE_THROWS_AS(singular_kernel_pair(0.0, 1.0, strip), eps_out_of_range);
    REQUIRE_THROWS_AS(singular_kernel_pair(2.5, 1.0, strip), eps_out_of_range);

    double prev_mass = -1.0;
    for (double eps : {1e-1, 1e-2, 1e-3}) {
        const double mass = summability_mass(eps, strip);
        REQUIRE(mass == Approx(2.0).margin(1e-8));
        if (prev_mass > 0) REQUIRE(std::abs(mass - prev_mass) <= 1e-8);
        prev_mass = mass;
    }
}
