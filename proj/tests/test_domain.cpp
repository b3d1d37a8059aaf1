#include <catch2/catch_amalgamated.hpp>

#include "wormhardy/domain.hpp"

using namespace wormhardy;
using Catch::Approx;

TEST_CASE("validate_params derives the strip constants") {
    const auto p = validate_params(pi);
    REQUIRE(p.half_strip == Approx(pi / 2).epsilon(1e-15));
    REQUIRE(p.weight_scale == Approx(pi).epsilon(1e-15));

    const auto q = validate_params(4.0);
    REQUIRE(q.half_strip == Approx(4.0 - pi / 2).epsilon(1e-15));
    REQUIRE(q.weight_scale == Approx(2.0 * q.half_strip).epsilon(1e-15));
}

TEST_CASE("validate_params rejects beta <= pi/2") {
    REQUIRE_THROWS_AS(validate_params(pi / 2), beta_out_of_range);
    REQUIRE_THROWS_AS(validate_params(1.0), beta_out_of_range);
    REQUIRE_THROWS_AS(validate_params(std::nan("")), beta_out_of_range);
}

TEST_CASE("classify_point on the reference points") {
    const auto p = validate_params(pi);
    REQUIRE(classify_point(p, cplx(0, 0), 0.0, 0.0).kind == PointClass::Interior);

    const auto b = classify_point(p, cplx(1.3, pi), pi / 2, 0.7);
    REQUIRE(b.kind == PointClass::Boundary);
    REQUIRE(b.component == BoundaryComponent::E1);

    REQUIRE(classify_point(p, cplx(0, 2 * pi), 0.0, 0.0).kind == PointClass::Exterior);
}

TEST_CASE("classification ignores gamma and real translations") {
    const auto p = validate_params(1.7);
    for (double x : {-5.0, 0.0, 3.2}) {
        for (double gamma : {0.0, 0.4, 1.4}) {
            REQUIRE(classify_point(p, cplx(x, 0.1), 0.05, gamma).kind == PointClass::Interior);
            const auto c = classify_point(p, cplx(x, -(p.beta - pi)), -p.half_strip, gamma);
            REQUIRE(c.kind == PointClass::Boundary);
            REQUIRE(c.component == BoundaryComponent::E4);
        }
    }
}

TEST_CASE("boundary components saturate both interior inequalities") {
    const auto p = validate_params(4.0);
    for (auto c : all_components) {
        const double y = component_im_z1(p, c);
        const double s = component_s(p, c);
        REQUIRE(std::abs(std::abs(y - s) - pi / 2) < 1e-12);
        REQUIRE(std::abs(std::abs(s) - p.half_strip) < 1e-12);
        REQUIRE(classify_point(p, cplx(0.0, y), s, 0.0).component == c);
    }
}

TEST_CASE("z2 reconstruction matches s and gamma") {
    const cplx z2 = z2_from(0.6, 0.25);
    REQUIRE(std::log(std::norm(z2)) == Approx(0.6).margin(1e-12));
    REQUIRE(std::arg(z2) == Approx(pi / 2).margin(1e-12));
}
