#include <catch2/catch_amalgamated.hpp>

#include "wormhardy/analysis.hpp"
#include "wormhardy/checks.hpp"
#include "wormhardy/szego.hpp"

using namespace wormhardy;
using Catch::Approx;

namespace {
const GridSpec g = make_grid(12.0, 512, 8);
const DomainParams P = validate_params(2.2);

double field_dist(const SampledField& a, const SampledField& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.values.size(); ++i) m = std::max(m, std::abs(a.values[i] - b.values[i]));
    return m;
}
double field_max(const SampledField& a) {
    double m = 0.0;
    for (const auto& v : a.values) m = std::max(m, std::abs(v));
    return m;
}
} // namespace

TEST_CASE("project_interior of zero data is zero, and rejects exterior slices") {
    const auto out = project_interior(P, make_boundary_data(g), 0.3, 0.1);
    REQUIRE(field_max(out) == 0.0);
    REQUIRE_THROWS_AS(project_interior(P, make_boundary_data(g), 2.5, 0.1), not_interior);
}

TEST_CASE("project_interior is linear over the boundary components") {
    const BoundaryData full = random_boundary_data(g, 31, BandSpec{6.0, 4}, 0x3);
    BoundaryData only1 = full, only2 = full;
    only1.comp[1] = make_field(g);
    only2.comp[0] = make_field(g);
    const auto a = project_interior(P, only1, 0.4, 0.2);
    const auto b = project_interior(P, only2, 0.4, 0.2);
    const auto c = project_interior(P, full, 0.4, 0.2);
    SampledField sum = a;
    for (std::size_t i = 0; i < sum.values.size(); ++i) sum.values[i] += b.values[i];
    REQUIRE(field_dist(sum, c) < 1e-13 * (1.0 + field_max(c)));
}

TEST_CASE("boundary matrix is a rank-one orthogonal projection at each frequency") {
    gaussian_rng rng(32);
    for (int q = 0; q < 200; ++q) {
        const double xi = 80.0 * (2 * rng.uniform() - 1);
        const int j = int(std::lround(16.0 * (2 * rng.uniform() - 1)));
        const auto m = boundary_symbol_matrix(P, xi, j);
        double trace = 0.0;
        for (int a = 0; a < 4; ++a) {
            trace += m[std::size_t(a)][std::size_t(a)];
            for (int b = 0; b < 4; ++b) {
                double mm = 0.0;
                for (int c = 0; c < 4; ++c) mm += m[std::size_t(a)][std::size_t(c)] * m[std::size_t(c)][std::size_t(b)];
                REQUIRE(std::abs(mm - m[std::size_t(a)][std::size_t(b)]) < 1e-13);
                REQUIRE(m[std::size_t(a)][std::size_t(b)] == m[std::size_t(b)][std::size_t(a)]);
            }
        }
        REQUIRE(trace == Approx(1.0).margin(1e-12)); // rank one
    }
}

TEST_CASE("boundary operator: idempotent, self-adjoint, non-expansive") {
    const BoundaryData phi = random_boundary_data(g, 33, BandSpec{6.0, 4});
    const BoundaryData psi = random_boundary_data(g, 34, BandSpec{6.0, 4});
    const auto s1 = boundary_szego(P, phi);
    const auto s2 = boundary_szego(P, s1);
    REQUIRE(checks::boundary_l2_distance(s2, s1) < 1e-10 * lp_boundary_norm(s1, 2.0));
    const cplx lhs = h2_inner(s1, psi);
    const cplx rhs = h2_inner(phi, boundary_szego(P, psi));
    REQUIRE(std::abs(lhs - rhs) <
            1e-10 * lp_boundary_norm(phi, 2.0) * lp_boundary_norm(psi, 2.0));
    REQUIRE(lp_boundary_norm(s1, 2.0) <= lp_boundary_norm(phi, 2.0) * (1.0 + 1e-12));
}

TEST_CASE("mode_extract picks characters and reconstructs") {
    SampledField f = make_field(g);
    for (int m = 0; m < g.nx; ++m)
        for (int n = 0; n < g.ngamma(); ++n) {
            const double ph = 2 * pi * 5 * g.gamma(n);
            f.at(m, n) = std::exp(-g.x(m) * g.x(m)) * cplx(std::cos(ph), std::sin(ph));
        }
    const auto c5 = mode_extract(f, 5);
    const auto c4 = mode_extract(f, 4);
    for (int m = 0; m < g.nx; m += 37) {
        REQUIRE(std::abs(c5[std::size_t(m)] - std::exp(-g.x(m) * g.x(m))) < 1e-13);
        REQUIRE(std::abs(c4[std::size_t(m)]) < 1e-14);
    }
    REQUIRE_THROWS_AS(mode_extract(f, g.nj + 1), mode_out_of_grid);

    // Parseval and exact reconstruction on the grid
    const BoundaryData rnd = random_boundary_data(g, 35, BandSpec{6.0, 6}, 0x1);
    const SampledField& h = rnd.comp[0];
    double mode_mass = 0.0;
    SampledField rec = make_field(g);
    for (int j = -g.nj; j <= g.nj; ++j) {
        const auto cj = mode_extract(h, j);
        for (int m = 0; m < g.nx; ++m) {
            mode_mass += std::norm(cj[std::size_t(m)]) * g.dx();
            for (int n = 0; n < g.ngamma(); ++n) {
                const double ph = 2 * pi * j * g.gamma(n);
                rec.at(m, n) += cj[std::size_t(m)] * cplx(std::cos(ph), std::sin(ph));
            }
        }
    }
    double grid_mass = 0.0;
    for (const auto& v : h.values) grid_mass += std::norm(v);
    grid_mass *= g.dx() / g.ngamma();
    REQUIRE(mode_mass == Approx(grid_mass).epsilon(1e-12));
    REQUIRE(field_dist(rec, h) < 1e-12 * (1.0 + field_max(h)));
}

TEST_CASE("pw synthesis: single mode is gamma independent, bad profiles rejected") {
    ModeCoefficients mc;
    mc.grid = g.xgrid();
    mc.g[0] = checks::gaussian_profile(mc.grid, 10.0);
    const auto phi = pw_worm_synthesize(P, mc, g);
    for (int l = 0; l < 4; ++l)
        for (int m = 0; m < g.nx; m += 61)
            for (int n = 1; n < g.ngamma(); ++n)
                REQUIRE(std::abs(phi.comp[std::size_t(l)].at(m, n) - phi.comp[std::size_t(l)].at(m, 0)) <
                        1e-13 * (1.0 + std::abs(phi.comp[std::size_t(l)].at(m, 0))));

    ModeCoefficients bad;
    bad.grid = g.xgrid();
    bad.g[0].assign(std::size_t(g.nx), cplx(1.0, 0.0));
    REQUIRE_THROWS_AS(pw_worm_synthesize(P, bad, g), pw_condition_violated);
}

TEST_CASE("pw modes are orthogonal in the boundary inner product") {
    ModeCoefficients m0, m1;
    m0.grid = m1.grid = g.xgrid();
    m0.g[0] = checks::gaussian_profile(m0.grid, 10.0);
    m1.g[1] = checks::gaussian_profile(m1.grid, 10.0);
    const auto f0 = pw_worm_synthesize(P, m0, g);
    const auto f1 = pw_worm_synthesize(P, m1, g);
    const cplx ip = h2_inner(f0, f1);
    REQUIRE(std::abs(ip) < 1e-12 * lp_boundary_norm(f0, 2.0) * lp_boundary_norm(f1, 2.0));
}

TEST_CASE("pw synthesis has the weighted H^2 norm (isometry)") {
    ModeCoefficients mc;
    mc.grid = g.xgrid();
    mc.g[2] = checks::gaussian_profile(mc.grid, 10.0);
    double weighted = 0.0;
    for (const auto& [j, prof] : mc.g) weighted += weighted_h2_norm(P, mc.grid, prof, j);
    const double d = 1e-9;
    const auto prof =
        hp_growth(P, make_pw_evaluator(P, mc, g), 2.0, {{pi / 2 - d, P.half_strip - d}});
    REQUIRE(prof.samples[0].value == Approx(weighted).epsilon(1e-6));
}

TEST_CASE("factor operators: endpoint degeneration and parameter guards") {
    const BoundaryData phi = random_boundary_data(g, 36, BandSpec{6.0, 4}, 0x1);
    OperatorTag tag;
    tag.kind = OperatorTag::Kind::LambdaII_s;
    tag.s = P.half_strip; // symbol vanishes identically here
    REQUIRE(field_max(factor_apply(P, tag, phi)) == 0.0);

    tag.s = P.half_strip + 0.1;
    REQUIRE_THROWS_AS(factor_apply(P, tag, phi), param_out_of_range);
    tag.kind = OperatorTag::Kind::XiI_t;
    tag.t = pi;
    REQUIRE_THROWS_AS(factor_apply(P, tag, phi), param_out_of_range);
}

TEST_CASE("factorizations hold on the grid") {
    const BoundaryData phi = random_boundary_data(g, 37, BandSpec{6.0, 4}, 0x1);
    using K = OperatorTag::Kind;
    const double t0 = 0.8, s0 = 0.35 * P.half_strip;

    const auto wrap = [&](const SampledField& f) {
        BoundaryData b = make_boundary_data(g);
        b.comp[0] = f;
        return b;
    };
    const auto ti = factor_apply(P, {K::TI_ts, t0, s0, 0.0}, phi);
    const auto ti2 =
        factor_apply(P, {K::LambdaI_s, 0.0, s0, 0.0}, wrap(factor_apply(P, {K::XiI_t, t0, 0.0, 0.0}, phi)));
    REQUIRE(field_dist(ti, ti2) < 1e-13 * field_max(ti));

    const auto sys = project_interior(P, phi, s0 + t0, s0);
    const auto sys2 = factor_apply(P, {K::lambda_prime_ys, 0.0, s0, s0 + t0},
                                   wrap(factor_apply(P, {K::lambda_s, 0.0, s0, 0.0}, phi)));
    REQUIRE(field_dist(sys, sys2) < 1e-13 * field_max(sys));

    // TSF1: S~_1 - S_{s+t,s} = T^I + T^II
    const auto s1 = boundary_szego(P, phi).comp[0];
    const auto tii = factor_apply(P, {K::TII_ts, t0, s0, 0.0}, phi);
    SampledField lhs = s1;
    for (std::size_t i = 0; i < lhs.values.size(); ++i)
        lhs.values[i] -= sys.values[i] + ti.values[i] + tii.values[i];
    REQUIRE(field_max(lhs) < 1e-11 * field_max(s1));
}

TEST_CASE("mollifier is a contraction converging to the identity") {
    const auto p = validate_params(1.7);
    BoundaryData phi = random_boundary_data(g, 38, BandSpec{6.0, 4});
    scale_boundary(phi, 1.0 / lp_boundary_norm(phi, 2.0));
    REQUIRE_THROWS_AS(mollify(p, phi, 0.0), param_out_of_range);

    for (double eps : {1e-2, 1e-3}) { // the pointwise bound needs 2 beta eps < 1
        const auto out = mollify(p, phi, eps);
        for (int l = 0; l < 4; ++l) {
            const double v = component_im_z1(p, all_components[std::size_t(l)]);
            for (int m = 0; m < g.nx; m += 101) {
                const double in = std::abs(phi.comp[std::size_t(l)].at(m, 2));
                const double got = std::abs(out.comp[std::size_t(l)].at(m, 2));
                REQUIRE(got <= in * (1.0 + 1e-14));
                // |G^eps - 1| <= eps (2 beta + |z1|) / (1 - 2 beta eps)
                const double z1 = std::hypot(g.x(m), v);
                if (in > 1e-12) {
                    const double ratio = std::abs(out.comp[std::size_t(l)].at(m, 2) / phi.comp[std::size_t(l)].at(m, 2) - 1.0);
                    REQUIRE(ratio <= eps * (2 * p.beta + z1) / (1 - 2 * p.beta * eps) + 1e-12);
                }
            }
        }
    }

    double prev = 1e300;
    for (int k = 1; k <= 20; ++k) {
        const double d = checks::boundary_l2_distance(mollify(p, phi, std::ldexp(1.0, -k)), phi);
        REQUIRE(d < prev + 1e-15);
        prev = d;
    }
}

TEST_CASE("sobolev commutation with the bessel scale") {
    const BoundaryData phi = random_boundary_data(g, 39, BandSpec{6.0, 4});
    for (double k : {0.5, 1.0, 2.0}) {
        const auto a = boundary_szego(P, apply_bessel(phi, k));
        const auto b = apply_bessel(boundary_szego(P, phi), k);
        REQUIRE(checks::boundary_l2_distance(a, b) < 1e-12 * lp_boundary_norm(b, 2.0));
    }
}

TEST_CASE("mode-truncated projections converge in norm") {
    // S_N phi keeps modes |j| <= N; the distance to S phi decreases in N and
    // vanishes once N reaches the band limit of phi
    const int band = 5;
    const BoundaryData phi = random_boundary_data(g, 46, BandSpec{6.0, band});
    const SampledField full = project_interior(P, phi, 0.5, 0.25);
    double prev = 1e300;
    for (int N = 0; N <= band; ++N) {
        SampledField trunc = full;
        for (int r = 0; r < g.ngamma(); ++r) {
            if (std::abs(g.j_of_row(r)) <= N) continue;
            // remove modes beyond N from the output (the operator acts
            // diagonally in j, so this is S_N phi)
            const auto cj = mode_extract(full, g.j_of_row(r));
            for (int m = 0; m < g.nx; ++m)
                for (int n = 0; n < g.ngamma(); ++n) {
                    const double ph = 2 * pi * g.j_of_row(r) * g.gamma(n);
                    trunc.at(m, n) -= cj[std::size_t(m)] * cplx(std::cos(ph), std::sin(ph));
                }
        }
        SampledField diff = full;
        for (std::size_t i = 0; i < diff.values.size(); ++i) diff.values[i] -= trunc.values[i];
        const double d = l2_norm(diff);
        REQUIRE(d <= prev * (1.0 + 1e-12) + 1e-15);
        prev = d;
    }
    REQUIRE(prev <= 1e-8); // N at the band limit: nothing is left
}

TEST_CASE("pointwise path deviation is small for band-limited data") {
    ModeCoefficients mc;
    mc.grid = g.xgrid();
    mc.g[0] = checks::gaussian_profile(mc.grid, 40.0, 0.3);
    BoundaryData phi = pw_worm_synthesize(P, mc, g);
    scale_boundary(phi, 1.0 / lp_boundary_norm(phi, 2.0));
    const double inf = std::numeric_limits<double>::infinity();
    const auto prof =
        convergence_profile(P, phi, ApproachPath::coupled, inf, {P.beta - 1e-5});
    REQUIRE(prof[0].second <= 1e-6);
}

TEST_CASE("interior projection agrees with the PW mode sum") {
    ModeCoefficients mc = checks::random_modes(g.xgrid(), 40, 4, 6.0);
    const auto phi = pw_worm_synthesize(P, mc, g);
    for (const auto& [y, s] : std::vector<std::pair<double, double>>{{0.0, 0.0}, {0.9, 0.4}, {-0.7, -0.3}}) {
        const auto got = project_interior(P, phi, y, s);
        const auto want = pw_interior_field(P, mc, g, y, s);
        REQUIRE(field_dist(got, want) < 1e-9 * (1.0 + field_max(want)));
    }
}
