#pragma once

// Named verification checks over the whole library: each check measures one
// identity or bound on seeded data and reports measured-vs-tolerance.  The
// `verify` CLI and the acceptance suite both run these; multi-part checks
// normalize every part by its own tolerance and report the worst quotient
// against a tolerance of 1.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "wormhardy/analysis.hpp"
#include "wormhardy/domain.hpp"
#include "wormhardy/grid.hpp"
#include "wormhardy/io.hpp"
#include "wormhardy/kernel.hpp"
#include "wormhardy/strip.hpp"
#include "wormhardy/szego.hpp"

namespace wormhardy {

struct RunConfig {
    double beta = pi;
    double L = 20.0;
    int nx = 4096;
    int nj = 64;
    double tol = 1e-10;
    std::uint64_t seed = 7;
    std::vector<double> p_list = {1.5, 2.0, 3.0};
    std::string output_dir = ".";

    GridSpec grid() const { return make_grid(L, nx, nj); }
};

struct CheckResult {
    std::string name;
    bool pass = false;
    double measured = 0.0;
    double tolerance = 0.0;
    std::string detail;
};

using CheckFn = std::function<CheckResult(const RunConfig&)>;

namespace checks {

inline double rel_err(cplx a, cplx b, double floor_scale) {
    return std::abs(a - b) / std::max(std::abs(b), floor_scale);
}

// Accumulates parts normalized by their own tolerances; pass iff worst <= 1.
struct PartSet {
    double worst = 0.0;
    std::ostringstream detail;

    void add(const std::string& label, double value, double tol) {
        worst = std::max(worst, value / tol);
        detail << label << " = " << fmt17(value) << " (tol " << fmt17(tol) << "); ";
    }
    // for monotonicity style booleans: contributes 0 when ok, 2 when violated
    void require(const std::string& label, bool ok) {
        worst = std::max(worst, ok ? 0.0 : 2.0);
        detail << label << " = " << (ok ? "ok" : "VIOLATED") << "; ";
    }
    CheckResult result(const std::string& name) const {
        return {name, worst <= 1.0, worst, 1.0, detail.str()};
    }
};

// random PW-admissible frequency profile: complex gaussians, gaussian taper,
// hard cutoff at |xi| <= cut (so weighted tails vanish identically on the grid)
inline std::vector<cplx> random_profile(const Grid1D& g, gaussian_rng& rng, double cut,
                                        double taper = 2.0) {
    std::vector<cplx> out(std::size_t(g.nx), cplx(0, 0));
    for (int k = 0; k < g.nx; ++k) {
        const double xi = g.xi(k);
        if (std::abs(xi) > cut) continue;
        out[std::size_t(k)] = rng.cnormal() * std::exp(-xi * xi / (taper * taper));
    }
    return out;
}

inline std::vector<cplx> gaussian_profile(const Grid1D& g, double cut = 40.0, double width = 1.0) {
    std::vector<cplx> out(std::size_t(g.nx), cplx(0, 0));
    for (int k = 0; k < g.nx; ++k) {
        const double xi = g.xi(k) / width;
        if (std::abs(g.xi(k)) > cut) continue;
        out[std::size_t(k)] = cplx(std::exp(-xi * xi), 0.0);
    }
    return out;
}

inline double boundary_l2_distance(const BoundaryData& a, const BoundaryData& b) {
    return lp_boundary_norm(boundary_axpy(a, b, cplx(-1.0, 0.0)), 2.0);
}

// ---------------------------------------------------------------------------
// 1. Strip reproducing property
// ---------------------------------------------------------------------------

inline CheckResult strip_reproducing(const RunConfig& cfg) {
    const auto strip = make_strip(cfg.beta);
    const Grid1D g{cfg.L, cfg.nx};
    double worst = 0.0;
    for (int f = 0; f < 20; ++f) {
        gaussian_rng rng(cfg.seed, 100 + std::uint64_t(f));
        // taper 1.5 caps e^{beta|xi|} |f^| at ~e^9, so the weighted boundary
        // data stay well inside the FFT's relative-accuracy budget
        const auto fhat = random_profile(g, rng, 12.0, 1.5);
        StripBoundaryPair phi = make_strip_pair(g);
        std::vector<cplx> wp(std::size_t(g.nx)), wm(std::size_t(g.nx));
        for (int k = 0; k < g.nx; ++k) {
            wp[std::size_t(k)] = scaled_mul(-strip.beta_strip * g.xi(k), fhat[std::size_t(k)]);
            wm[std::size_t(k)] = scaled_mul(+strip.beta_strip * g.xi(k), fhat[std::size_t(k)]);
        }
        phi.plus = profile_to_physical(g, std::move(wp));
        phi.minus = profile_to_physical(g, std::move(wm));

        std::vector<cplx> got(50), want(50);
        double scale = 0.0;
        for (int q = 0; q < 50; ++q) {
            const cplx z(6.0 * rng.uniform() - 3.0,
                         strip.beta_strip * (1.8 * rng.uniform() - 0.9));
            got[std::size_t(q)] = strip_project(phi, z, strip);
            want[std::size_t(q)] = pw_extend(g, fhat, z, strip);
            scale = std::max(scale, std::abs(want[std::size_t(q)]));
        }
        for (int q = 0; q < 50; ++q)
            worst = std::max(worst, rel_err(got[std::size_t(q)], want[std::size_t(q)], 1e-6 * scale));
    }
    return {"strip_reproducing", worst <= 1e-9, worst, 1e-9,
            "max relative error, 20 PW functions x 50 interior points"};
}

// ---------------------------------------------------------------------------
// 2. Strip kernel identity
// ---------------------------------------------------------------------------

inline CheckResult strip_kernel_identity(const RunConfig& cfg) {
    const auto strip = make_strip(cfg.beta);
    gaussian_rng rng(cfg.seed, 200);
    PartSet parts;
    double worst = 0.0;
    for (int q = 0; q < 100; ++q) {
        const cplx w(4.0 * rng.uniform() - 2.0, cfg.beta * (1.5 * rng.uniform() - 0.75));
        const cplx z(4.0 * rng.uniform() - 2.0, cfg.beta * (1.5 * rng.uniform() - 0.75));
        const cplx a = strip_kernel(strip, w, z, StripKernelMode::integral);
        const cplx b = strip_kernel(strip, w, z, StripKernelMode::closed_form);
        worst = std::max(worst, std::abs(a - b));
    }
    parts.add("max |integral - closed_form|", worst, 1e-11);
    const cplx w0(0.4, 0.2);
    const cplx diag = strip_kernel(strip, w0, std::conj(w0), StripKernelMode::integral);
    parts.add("|K(w - conj z = 0) - 1/(8 beta)|", std::abs(diag - 1.0 / (8.0 * cfg.beta)), 1e-12);
    return parts.result("strip_kernel_identity");
}

// ---------------------------------------------------------------------------
// 3. Summability kernel mass
// ---------------------------------------------------------------------------

inline CheckResult summability_mass_check(const RunConfig& cfg) {
    const auto strip = make_strip(cfg.beta);
    double worst = 0.0;
    for (double eps : {1e-1, 1e-2, 1e-3})
        worst = std::max(worst, std::abs(summability_mass(eps, strip) - 2.0));
    return {"summability_mass", worst <= 1e-8, worst, 1e-8,
            "max |Int K_eps - 2| over eps in {1e-1, 1e-2, 1e-3}"};
}

// ---------------------------------------------------------------------------
// 4. Mode-kernel reproducing property
// ---------------------------------------------------------------------------

inline CheckResult mode_kernel_reproducing(const RunConfig& cfg) {
    const auto p = validate_params(cfg.beta);
    const Grid1D g{cfg.L, cfg.nx};
    const double cut = 20.0;
    double worst = 0.0;
    for (int j = -3; j <= 3; ++j) {
        gaussian_rng rng(cfg.seed, 400 + std::uint64_t(j + 3));
        const auto fhat = random_profile(g, rng, cut);
        const auto strip = make_strip(p.beta);
        for (int q = 0; q < 5; ++q) {
            const cplx z(4.0 * rng.uniform() - 2.0, p.beta * (1.6 * rng.uniform() - 0.8));
            // <f, k_j(., z)> with the ch(pi xi) ch[(2b - pi)(xi - j/2)] weight,
            // every factor evaluated as a plain value on the truncated band
            cplx inner(0.0, 0.0);
            for (int k = 0; k < g.nx; ++k) {
                const double xi = g.xi(k);
                if (std::abs(xi) > cut) continue;
                const double weight =
                    std::cosh(pi * xi) * std::cosh(p.weight_scale * (xi - 0.5 * j));
                const cplx khat_conj =
                    0.25 * std::exp(cplx(0.0, 1.0) * z * xi) / weight; // conj of k^_j(xi, z)
                inner += fhat[std::size_t(k)] * khat_conj * weight;
            }
            inner *= g.dxi() * 2.0 / pi;
            const cplx want = pw_extend(g, fhat, z, strip);
            worst = std::max(worst, rel_err(inner, want, 1e-6 * (1.0 + std::abs(want))));
        }
    }
    return {"mode_kernel_reproducing", worst <= 1e-9, worst, 1e-9,
            "max relative error of <f, k_j(., z)>_{H^2_j} vs f(z), j in -3..3"};
}

// ---------------------------------------------------------------------------
// 5. k_0(0) closed value at beta = pi
// ---------------------------------------------------------------------------

inline CheckResult k0_closed_value(const RunConfig&) {
    const auto p = validate_params(pi);
    const cplx v = kj_eval(p, 0, cplx(0.0, 0.0));
    const double want = 1.0 / (4.0 * pi * pi);
    const double err = std::abs(v - want);
    return {"k0_closed_value", err <= 1e-12, err, 1e-12,
            "|k_0(0) - 1/(4 pi^2)| at beta = pi (tanh antiderivative oracle)"};
}

// ---------------------------------------------------------------------------
// 6. Boundary projector structure
// ---------------------------------------------------------------------------

inline CheckResult projector_idempotence(const RunConfig& cfg) {
    const auto p = validate_params(cfg.beta);
    const GridSpec g = cfg.grid();
    gaussian_rng rng(cfg.seed, 600);
    PartSet parts;

    double worst_idem = 0.0, worst_sym = 0.0;
    for (int q = 0; q < 1000; ++q) {
        const double xi = g.xi_max() * (2.0 * rng.uniform() - 1.0);
        const int j = int(std::lround((2.0 * rng.uniform() - 1.0) * g.nj));
        const auto m = boundary_symbol_matrix(p, xi, j);
        double idem = 0.0, sym = 0.0;
        for (int a = 0; a < 4; ++a)
            for (int b = 0; b < 4; ++b) {
                double mm = 0.0;
                for (int c = 0; c < 4; ++c) mm += m[std::size_t(a)][std::size_t(c)] * m[std::size_t(c)][std::size_t(b)];
                idem += (mm - m[std::size_t(a)][std::size_t(b)]) * (mm - m[std::size_t(a)][std::size_t(b)]);
                sym += (m[std::size_t(a)][std::size_t(b)] - m[std::size_t(b)][std::size_t(a)]) *
                       (m[std::size_t(a)][std::size_t(b)] - m[std::size_t(b)][std::size_t(a)]);
            }
        worst_idem = std::max(worst_idem, std::sqrt(idem));
        worst_sym = std::max(worst_sym, std::sqrt(sym));
    }
    parts.add("max ||M^2 - M||_F", worst_idem, 1e-13);
    parts.add("max ||M - M*||_F", worst_sym, 1e-13);

    const BandSpec band{16.0, std::min(8, g.nj)};
    const BoundaryData phi = random_boundary_data(g, cfg.seed + 61, band);
    const BoundaryData psi = random_boundary_data(g, cfg.seed + 62, band);
    const BoundaryData sphi = boundary_szego(p, phi);
    const BoundaryData ssphi = boundary_szego(p, sphi);
    parts.add("||S~S~phi - S~phi|| / ||S~phi||",
              boundary_l2_distance(ssphi, sphi) / lp_boundary_norm(sphi, 2.0), 1e-10);
    const BoundaryData spsi = boundary_szego(p, psi);
    const cplx lhs = h2_inner(sphi, psi);
    const cplx rhs = h2_inner(phi, spsi);
    parts.add("|<S~phi, psi> - <phi, S~psi>| / (||phi|| ||psi||)",
              std::abs(lhs - rhs) / (lp_boundary_norm(phi, 2.0) * lp_boundary_norm(psi, 2.0)),
              1e-10);
    return parts.result("projector_idempotence");
}

// ---------------------------------------------------------------------------
// 7. Paley-Wiener round trip
// ---------------------------------------------------------------------------

inline ModeCoefficients random_modes(const Grid1D& g, std::uint64_t seed, int jmax, double cut,
                                     double taper = 1.5) {
    ModeCoefficients mc;
    mc.grid = g;
    for (int j = -jmax; j <= jmax; ++j) {
        gaussian_rng rng(seed, 700 + std::uint64_t(j + jmax));
        mc.g[j] = random_profile(g, rng, cut, taper);
    }
    return mc;
}

inline CheckResult pw_round_trip(const RunConfig& cfg) {
    const auto p = validate_params(cfg.beta);
    const GridSpec g = cfg.grid();
    // the taper keeps the E3/E4 boundary values (scale e^{beta |xi|} |g|)
    // small enough that transform rounding stays below the 1e-9 gate
    const ModeCoefficients mc = random_modes(g.xgrid(), cfg.seed, std::min(8, g.nj), 8.0, 1.5);
    const BoundaryData phi = pw_worm_synthesize(p, mc, g);
    PartSet parts;

    // (a) fixed point of the boundary operator
    const BoundaryData sphi = boundary_szego(p, phi);
    parts.add("||S~phi - phi|| / ||phi||",
              boundary_l2_distance(sphi, phi) / lp_boundary_norm(phi, 2.0), 1e-9);

    // (b) interior values against the direct mode-sum oracle at 100 points
    gaussian_rng rng(cfg.seed, 710);
    double worst = 0.0;
    for (int slice = 0; slice < 10; ++slice) {
        const double s = p.half_strip * (1.8 * rng.uniform() - 0.9);
        const double y = s + (pi / 2) * (1.8 * rng.uniform() - 0.9);
        const SampledField field = project_interior(p, phi, y, s);
        double scale = 0.0;
        std::vector<cplx> got(10), want(10);
        for (int q = 0; q < 10; ++q) {
            const int m = int(rng.uniform() * (g.nx / 2)) + g.nx / 4; // central half of the window
            const int n = int(rng.uniform() * g.ngamma());
            cplx oracle(0.0, 0.0);
            for (const auto& [j, gj] : mc.g) {
                cplx prof(0.0, 0.0);
                for (int k = 0; k < g.nx; ++k) {
                    const cplx wv = scaled_mul(-y * g.xi(k), gj[std::size_t(k)]);
                    const double ph = g.x(m) * g.xi(k);
                    prof += wv * cplx(std::cos(ph), std::sin(ph));
                }
                prof /= 2.0 * g.L;
                const double ph = 2.0 * pi * j * g.gamma(n);
                oracle += std::exp(0.5 * j * s) * cplx(std::cos(ph), std::sin(ph)) * prof;
            }
            got[std::size_t(q)] = field.at(m, n);
            want[std::size_t(q)] = oracle;
            scale = std::max(scale, std::abs(oracle));
        }
        for (int q = 0; q < 10; ++q)
            worst = std::max(worst, std::abs(got[std::size_t(q)] - want[std::size_t(q)]) / scale);
    }
    parts.add("max relative error vs mode-sum oracle", worst, 1e-9);
    return parts.result("pw_round_trip");
}

// ---------------------------------------------------------------------------
// 8. Factorizations and vanishing limits
// ---------------------------------------------------------------------------

inline CheckResult factorizations(const RunConfig& cfg) {
    const auto p = validate_params(cfg.beta);
    const GridSpec g = cfg.grid();
    const BandSpec band{16.0, std::min(8, g.nj)};
    const BoundaryData phi = random_boundary_data(g, cfg.seed + 81, band, 0x1);
    const double t0 = 0.7;
    const double s0 = 0.4 * p.half_strip;
    PartSet parts;

    using K = OperatorTag::Kind;
    const auto apply = [&](K kind, double t, double s, double y = 0.0) {
        OperatorTag tag;
        tag.kind = kind;
        tag.t = t;
        tag.s = s;
        tag.y = y;
        return factor_apply(p, tag, phi);
    };
    const auto wrap = [&](const SampledField& f) {
        BoundaryData b = make_boundary_data(g);
        b.comp[0] = f;
        return b;
    };
    const auto field_dist = [&](const SampledField& a, const SampledField& b) {
        SampledField d = a;
        for (std::size_t i = 0; i < d.values.size(); ++i) d.values[i] -= b.values[i];
        return l2_norm(d);
    };

    // T^I = Lambda^I o Xi^I and T^II = Lambda^II o Xi^II
    const SampledField ti = apply(K::TI_ts, t0, s0);
    const SampledField ti2 = factor_apply(p, {K::LambdaI_s, 0.0, s0, 0.0}, wrap(apply(K::XiI_t, t0, 0.0)));
    parts.add("||T^I - Lambda^I Xi^I|| / ||T^I||", field_dist(ti, ti2) / l2_norm(ti), 1e-13);
    const SampledField tii = apply(K::TII_ts, t0, s0);
    const SampledField tii2 =
        factor_apply(p, {K::LambdaII_s, 0.0, s0, 0.0}, wrap(apply(K::XiII_t, t0, 0.0)));
    parts.add("||T^II - Lambda^II Xi^II|| / ||T^II||", field_dist(tii, tii2) / l2_norm(tii), 1e-13);

    // S_{y,s} = lambda'_{y,s} o lambda_s on mode-finite data
    const double y0 = s0 + t0;
    const SampledField sys = project_interior(p, phi, y0, s0);
    const SampledField sys2 =
        factor_apply(p, {K::lambda_prime_ys, 0.0, s0, y0}, wrap(apply(K::lambda_s, 0.0, s0)));
    parts.add("||S_{y,s} - lambda' lambda|| / ||S_{y,s}||", field_dist(sys, sys2) / l2_norm(sys),
              1e-13);

    // S~_1 phi - S_{s+t,s} phi = (T^I + T^II) phi
    const SampledField s1 = boundary_szego(p, phi).comp[0];
    SampledField lhs = s1;
    for (std::size_t i = 0; i < lhs.values.size(); ++i) lhs.values[i] -= sys.values[i];
    SampledField rhs = ti;
    for (std::size_t i = 0; i < rhs.values.size(); ++i) rhs.values[i] += tii.values[i];
    parts.add("||(S~_1 - S_{s+t,s}) - (T^I + T^II)|| / ||S~_1||", field_dist(lhs, rhs) / l2_norm(s1),
              1e-11);

    // vanishing limits, dyadic in the distance from the endpoint
    const double in_norm = lp_boundary_norm(phi, 2.0);
    bool mono = true;
    double prev = -1.0;
    for (int k = 1; k <= 20; ++k) {
        const double d = std::ldexp(1.0, -k);
        if (d >= pi / 2 || d >= p.half_strip) continue;
        const double a = l2_norm(apply(K::XiI_t, pi / 2 - d, 0.0)) +
                         l2_norm(apply(K::LambdaII_s, 0.0, p.half_strip - d));
        if (prev >= 0.0 && a > prev * (1.0 + 1e-9) + 1e-16) mono = false;
        prev = a;
    }
    parts.require("vanishing norms decrease dyadically", mono);
    const double end_xi = l2_norm(apply(K::XiI_t, pi / 2 - 1e-6, 0.0)) / in_norm;
    const double end_lam = l2_norm(apply(K::LambdaII_s, 0.0, p.half_strip - 1e-6)) / in_norm;
    parts.add("||Xi^I_t g|| / ||g|| at pi/2 - 1e-6", end_xi, 1e-4);
    parts.add("||Lambda^II_s g|| / ||g|| at h - 1e-6", end_lam, 1e-4);
    return parts.result("factorizations");
}

// ---------------------------------------------------------------------------
// 9. Norm isometry and mode orthogonality
// ---------------------------------------------------------------------------

inline CheckResult norm_isometry(const RunConfig& cfg) {
    const auto p = validate_params(cfg.beta);
    const GridSpec g = cfg.grid();
    PartSet parts;

    // single-mode: weighted H^2 norm vs the L_2 growth functional near the sup
    const double d = 1e-9;
    const ApproachParams corner{pi / 2 - d, p.half_strip - d};
    for (int j : {0, 3}) {
        ModeCoefficients mc;
        mc.grid = g.xgrid();
        mc.g[j] = gaussian_profile(mc.grid);
        const double weighted = weighted_h2_norm(p, mc.grid, mc.g[j], j);
        const auto prof = hp_growth(p, make_pw_evaluator(p, mc, g), 2.0, {corner});
        parts.add("j = " + std::to_string(j) + ": |L2 growth - weighted norm| / weighted",
                  std::abs(prof.samples[0].value - weighted) / weighted, 1e-6);
    }

    // multi-mode: sum_j L2 F_j = L2 F at interior grid points
    ModeCoefficients multi;
    multi.grid = g.xgrid();
    gaussian_rng rng(cfg.seed, 900);
    for (int j : {0, 1, 3}) multi.g[j] = random_profile(multi.grid, rng, 8.0);
    const std::vector<ApproachParams> pts = {{0.3, 0.2 * p.half_strip},
                                             {1.2, 0.7 * p.half_strip}};
    const auto total = hp_growth(p, make_pw_evaluator(p, multi, g), 2.0, pts);
    double worst = 0.0;
    for (std::size_t q = 0; q < pts.size(); ++q) {
        double sum = 0.0;
        for (const auto& [j, prof] : multi.g) {
            ModeCoefficients single;
            single.grid = multi.grid;
            single.g[j] = prof;
            sum += hp_growth(p, make_pw_evaluator(p, single, g), 2.0, {pts[q]}).samples[0].value;
        }
        worst = std::max(worst, std::abs(sum - total.samples[q].value) / total.samples[q].value);
    }
    parts.add("max |sum_j L2 F_j - L2 F| / L2 F", worst, 1e-10);
    return parts.result("norm_isometry");
}

// ---------------------------------------------------------------------------
// 10. Sobolev commutation
// ---------------------------------------------------------------------------

inline CheckResult sobolev_commutation(const RunConfig& cfg) {
    const auto p = validate_params(cfg.beta);
    const GridSpec g = cfg.grid();
    const BandSpec band{16.0, std::min(8, g.nj)};
    const BoundaryData phi = random_boundary_data(g, cfg.seed + 101, band);
    double worst = 0.0;
    for (double k : {0.5, 1.0, 2.0}) {
        const BoundaryData a = boundary_szego(p, apply_bessel(phi, k));
        const BoundaryData b = apply_bessel(boundary_szego(p, phi), k);
        worst = std::max(worst, boundary_l2_distance(a, b) / lp_boundary_norm(b, 2.0));
    }
    return {"sobolev_commutation", worst <= 1e-12, worst, 1e-12,
            "max relative commutator of S~ with [1 + j^2 + xi^2]^{k/2}, k in {0.5, 1, 2}"};
}

// ---------------------------------------------------------------------------
// 11. Uniform L^p bounds of S_{y,s}
// ---------------------------------------------------------------------------

inline CheckResult lp_uniformity(const RunConfig& cfg) {
    const auto p = validate_params(cfg.beta);
    const GridSpec g = cfg.grid();
    // Slice grid over the central approach region (t, s) in
    // [0, 0.3 pi/2] x [0, 0.3 h].  Toward the corner the restricted norms
    // legitimately drift from 1/2 up to ||S~|| = 1 as S_{y,s} -> S~, so a
    // near-constant empirical profile is a statement about the interior
    // family, not about the boundary transition.
    std::vector<std::array<double, 2>> slices;
    for (int i = 0; i < 10; ++i)
        for (int q = 0; q < 10; ++q) {
            const double t = 0.30 * (pi / 2) * i / 9.0;
            const double s = 0.30 * p.half_strip * q / 9.0;
            slices.push_back({s + t, s});
        }
    const BandSpec band{16.0, std::min(8, g.nj)};
    const auto st = lp_uniformity_study(p, g, slices, cfg.p_list, 50, cfg.seed + 111, band);

    PartSet parts;
    for (std::size_t ip = 0; ip < st.p_list.size(); ++ip) {
        double lo = st.ratios[ip][0], hi = st.ratios[ip][0];
        for (double r : st.ratios[ip]) {
            lo = std::min(lo, r);
            hi = std::max(hi, r);
        }
        const std::string tag = "p = " + fmt17(st.p_list[ip]);
        parts.add(tag + ": max ratio / (3 x p2 symbol bound)", hi / (3.0 * st.symbol_bound_p2), 1.0);
        parts.add(tag + ": grid variation (max - min)/min", (hi - lo) / lo, 0.20);
    }
    return parts.result("lp_uniformity");
}

// ---------------------------------------------------------------------------
// 12. Convergence profiles
// ---------------------------------------------------------------------------

inline CheckResult convergence_profiles(const RunConfig& cfg) {
    const auto p = validate_params(cfg.beta);
    const GridSpec g = cfg.grid();
    PartSet parts;

    // product path, dyadic deltas
    BoundaryData phi = random_boundary_data(g, cfg.seed + 121, BandSpec{16.0, std::min(8, g.nj)});
    scale_boundary(phi, 1.0 / lp_boundary_norm(phi, 2.0));
    std::vector<double> deltas;
    for (int k = 1; k <= 40 && deltas.size() < 31; ++k) {
        const double d = std::ldexp(1.0, -k);
        if (d <= 0.5 * std::min(pi / 2, p.half_strip)) deltas.push_back(d);
    }
    const auto prod = convergence_profile(p, phi, ApproachPath::product, 2.0, deltas);
    bool mono = true;
    for (std::size_t i = 1; i < prod.size(); ++i)
        if (prod[i].second > prod[i - 1].second * (1.0 + 1e-9) + 1e-15) mono = false;
    parts.require("product path distances decrease", mono);
    parts.add("product path final L2 distance", prod.back().second, 1e-8);

    // coupled path, sup distance, Gaussian single-mode data.  A narrow mode
    // profile keeps the E1-vs-E3 weight spread e^{beta^2 w^2 / 4} of order
    // one, so the path-Lipschitz constant stays O(1) for every beta tested.
    ModeCoefficients mc;
    mc.grid = g.xgrid();
    mc.g[0] = gaussian_profile(mc.grid, 40.0, 0.3);
    BoundaryData phic = pw_worm_synthesize(p, mc, g);
    scale_boundary(phic, 1.0 / lp_boundary_norm(phic, 2.0));
    std::vector<double> ts;
    for (int k = 2; k <= 13; ++k) ts.push_back(p.beta * (1.0 - std::ldexp(1.0, -k)));
    ts.push_back(p.beta - 1e-4);
    const double inf = std::numeric_limits<double>::infinity();
    const auto coup = convergence_profile(p, phic, ApproachPath::coupled, inf, ts);
    bool mono2 = true;
    for (std::size_t i = 1; i < coup.size(); ++i)
        if (coup[i].second > coup[i - 1].second * (1.0 + 1e-9) + 1e-15) mono2 = false;
    parts.require("coupled path distances decrease", mono2);
    parts.add("coupled path sup distance at t = beta - 1e-4", coup.back().second, 1e-5);
    return parts.result("convergence_profiles");
}

// ---------------------------------------------------------------------------
// 13. Mollifier density
// ---------------------------------------------------------------------------

// Data: a unit-norm x-localized bump on E1, the component where
// |2 beta + i z1| is smallest.  Note the analytic floor
//   ||mollify(phi, eps) - phi|| >= eps inf|2 beta + i z1| ||phi|| / (1 + ...)
//   ~ eps beta ||phi||,
// so at eps = 2^-20 no unit-norm data can land below eps * beta ~ 1.5e-6;
// the k = 20 gate reports against its stated 1e-6 regardless.
inline CheckResult mollifier_density(const RunConfig& cfg) {
    const auto p = validate_params(cfg.beta);
    const GridSpec g = cfg.grid();
    BoundaryData phi = make_boundary_data(g);
    for (int m = 0; m < g.nx; ++m) {
        const double x = g.x(m);
        for (int n = 0; n < g.ngamma(); ++n) phi.comp[0].at(m, n) = std::exp(-x * x);
    }
    scale_boundary(phi, 1.0 / lp_boundary_norm(phi, 2.0));
    PartSet parts;
    bool mono = true;
    double prev = -1.0, last = 0.0;
    for (int k = 1; k <= 20; ++k) {
        last = boundary_l2_distance(mollify(p, phi, std::ldexp(1.0, -k)), phi);
        if (prev >= 0.0 && last > prev * (1.0 + 1e-12) + 1e-16) mono = false;
        prev = last;
    }
    parts.require("||mollify(phi, 2^-k) - phi|| decreasing in k", mono);
    parts.add("distance at k = 20 (unit-norm data; analytic floor eps*beta = " +
                  fmt17(std::ldexp(1.0, -20) * p.beta) + ")",
              last, 1e-6);
    return parts.result("mollifier_density");
}

} // namespace checks

// ---------------------------------------------------------------------------
// Registry, report, determinism
// ---------------------------------------------------------------------------

struct CheckDef {
    std::string name;
    std::string suite;
    CheckFn fn;
};

inline const std::vector<CheckDef>& check_registry();

inline std::vector<CheckResult> run_checks(const std::string& selector, const RunConfig& cfg) {
    std::vector<CheckResult> out;
    for (const auto& def : check_registry()) {
        const bool match = selector == "all" || selector == def.suite || selector == def.name ||
                           def.name.find(selector) != std::string::npos;
        if (!match) continue;
        try {
            out.push_back(def.fn(cfg));
        } catch (const std::exception& e) {
            out.push_back({def.name, false, std::nan(""), 0.0, std::string("exception: ") + e.what()});
        }
    }
    return out;
}

inline std::string render_report_json(const RunConfig& cfg, const std::vector<CheckResult>& rs) {
    std::ostringstream o;
    o << "{\n  \"config\": {\"beta\": " << fmt17(cfg.beta) << ", \"L\": " << fmt17(cfg.L)
      << ", \"Nx\": " << cfg.nx << ", \"Nj\": " << cfg.nj << ", \"tol\": " << fmt17(cfg.tol)
      << ", \"seed\": " << cfg.seed << ", \"p_list\": [";
    for (std::size_t i = 0; i < cfg.p_list.size(); ++i)
        o << (i ? ", " : "") << fmt17(cfg.p_list[i]);
    o << "]},\n  \"checks\": [\n";
    bool all_pass = true;
    for (std::size_t i = 0; i < rs.size(); ++i) {
        const auto& r = rs[i];
        all_pass = all_pass && r.pass;
        o << "    {\"check_name\": \"" << r.name << "\", \"status\": \""
          << (r.pass ? "pass" : "fail") << "\", \"measured\": " << fmt17(r.measured)
          << ", \"tolerance\": " << fmt17(r.tolerance) << ", \"detail\": \"" << r.detail << "\"}"
          << (i + 1 < rs.size() ? "," : "") << "\n";
    }
    o << "  ],\n  \"all_pass\": " << (all_pass ? "true" : "false") << "\n}\n";
    return o.str();
}

namespace checks {

// 14. Determinism: the fast strip suite rendered twice must be byte-identical.
inline CheckResult determinism(const RunConfig& cfg) {
    RunConfig small = cfg;
    small.L = 12.0;
    small.nx = 512;
    small.nj = 8;
    const std::string a = render_report_json(small, run_checks("strip", small));
    const std::string b = render_report_json(small, run_checks("strip", small));
    const bool same = (a == b);
    return {"determinism", same, same ? 0.0 : 1.0, 0.5,
            "strip suite report rendered twice, byte compare"};
}

} // namespace checks

inline const std::vector<CheckDef>& check_registry() {
    static const std::vector<CheckDef> defs = {
        {"strip_reproducing", "strip", checks::strip_reproducing},
        {"strip_kernel_identity", "strip", checks::strip_kernel_identity},
        {"summability_mass", "strip", checks::summability_mass_check},
        {"mode_kernel_reproducing", "kernel", checks::mode_kernel_reproducing},
        {"k0_closed_value", "kernel", checks::k0_closed_value},
        {"projector_idempotence", "szego", checks::projector_idempotence},
        {"pw_round_trip", "szego", checks::pw_round_trip},
        {"factorizations", "szego", checks::factorizations},
        {"norm_isometry", "analysis", checks::norm_isometry},
        {"sobolev_commutation", "szego", checks::sobolev_commutation},
        {"lp_uniformity", "opnorm", checks::lp_uniformity},
        {"convergence_profiles", "analysis", checks::convergence_profiles},
        {"mollifier_density", "density", checks::mollifier_density},
        {"determinism", "meta", checks::determinism},
    };
    return defs;
}

} // namespace wormhardy
