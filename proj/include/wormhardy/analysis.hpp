#pragma once

// Measurement layer: boundary norms and inner products, the weighted H^2
// norm, Sobolev norms, the growth functional L_p F(t, s), convergence
// profiles toward the boundary operator, and empirical operator norms on
// seeded random band-limited data.

#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <utility>
#include <vector>

#include "wormhardy/common.hpp"
#include "wormhardy/domain.hpp"
#include "wormhardy/grid.hpp"
#include "wormhardy/szego.hpp"

namespace wormhardy {

// ---------------------------------------------------------------------------
// Norms and inner products on the distinguished boundary
// ---------------------------------------------------------------------------

// ||phi||_{L^p(bd)} = ( sum_l Int Int |phi_l|^p )^{1/p}
inline double lp_boundary_norm(const BoundaryData& phi, double p) {
    if (!(p > 1.0) || !std::isfinite(p)) throw p_out_of_range("lp_boundary_norm: p must be in (1, inf)");
    double mass = 0.0;
    for (int l = 0; l < 4; ++l) mass += lp_mass(phi.comp[std::size_t(l)], p);
    return std::pow(mass, 1.0 / p);
}

inline cplx h2_inner(const BoundaryData& phi, const BoundaryData& psi) {
    if (phi.grid != psi.grid) throw grid_mismatch("h2_inner: grids differ");
    cplx acc(0.0, 0.0);
    for (int l = 0; l < 4; ++l) acc += l2_inner(phi.comp[std::size_t(l)], psi.comp[std::size_t(l)]);
    return acc;
}

inline double linf_norm(const SampledField& f) {
    double m = 0.0;
    for (const cplx& v : f.values) m = std::max(m, std::abs(v));
    return m;
}

inline BoundaryData boundary_axpy(const BoundaryData& a, const BoundaryData& b, cplx scale_b) {
    if (a.grid != b.grid) throw grid_mismatch("boundary_axpy: grids differ");
    BoundaryData out = a;
    for (int l = 0; l < 4; ++l)
        for (std::size_t i = 0; i < out.comp[std::size_t(l)].values.size(); ++i)
            out.comp[std::size_t(l)].values[i] += scale_b * b.comp[std::size_t(l)].values[i];
    return out;
}

inline void scale_boundary(BoundaryData& phi, double c) {
    for (int l = 0; l < 4; ++l)
        for (cplx& v : phi.comp[std::size_t(l)].values) v *= c;
}

// (1/2pi) sum_j Int |F(xi, j)|^2 dxi on the grid (Plancherel mass)
inline double frequency_l2_mass(const FrequencyField& F) {
    double acc = 0.0;
    for (const cplx& v : F.coeffs) acc += std::norm(v);
    return acc * F.grid.dxi() / (2.0 * pi);
}

// ---------------------------------------------------------------------------
// Weighted H^2 norm of a mode profile
// ---------------------------------------------------------------------------

// (2/pi) Int |g(xi)|^2 ch(pi xi) ch[(2b - pi)(xi - j/2)] dxi  (the squared
// H^2_j norm).  The weighted integrand must have decayed at the grid edge.
inline double weighted_h2_norm(const DomainParams& p, const Grid1D& g,
                               const std::vector<cplx>& gj, int j) {
    const auto log_term = [&](int k) {
        const double m = std::abs(gj[std::size_t(k)]);
        if (m == 0.0) return -std::numeric_limits<double>::infinity();
        const double xi = g.xi(k);
        return 2.0 * std::log(m) + log_cosh(pi * xi) + log_cosh(p.weight_scale * (xi - 0.5 * j));
    };
    double peak = -std::numeric_limits<double>::infinity();
    for (int k = 0; k < g.nx; ++k) peak = std::max(peak, log_term(k));
    if (peak == -std::numeric_limits<double>::infinity()) return 0.0;
    double edge = -std::numeric_limits<double>::infinity();
    for (int k : {0, 1, g.nx - 2, g.nx - 1}) edge = std::max(edge, log_term(k));
    if (!(edge <= peak + std::log(1e-12)))
        throw weight_divergence("weighted_h2_norm: weighted integrand not decayed on grid");
    double acc = 0.0;
    for (int k = 0; k < g.nx; ++k) acc += exp_or_zero(log_term(k));
    return acc * g.dxi() * 2.0 / pi;
}

// ---------------------------------------------------------------------------
// Sobolev norm
// ---------------------------------------------------------------------------

struct SobolevOrder {
    double k = 0.0;
    double p = 2.0;
};

inline MultiplierSpec bessel_multiplier(double k) {
    return MultiplierSpec::full([k](double xi, int j) {
        return cplx(std::pow(1.0 + double(j) * j + xi * xi, 0.5 * k), 0.0);
    });
}

inline BoundaryData apply_bessel(const BoundaryData& phi, double k) {
    const auto m = bessel_multiplier(k);
    BoundaryData out = phi;
    for (int l = 0; l < 4; ++l)
        out.comp[std::size_t(l)] = to_physical(apply_multiplier(to_frequency(phi.comp[std::size_t(l)]), m));
    return out;
}

inline double sobolev_norm(const BoundaryData& phi, const SobolevOrder& ord) {
    if (!(ord.k >= 0.0)) throw param_out_of_range("sobolev_norm: k must be >= 0");
    if (ord.k == 0.0) return lp_boundary_norm(phi, ord.p);
    return lp_boundary_norm(apply_bessel(phi, ord.k), ord.p);
}

// ---------------------------------------------------------------------------
// Growth functional L_p F(t, s)
// ---------------------------------------------------------------------------

struct GrowthSample {
    double t = 0.0;
    double s = 0.0;
    double value = 0.0; // L_p F(t, s), the sum of the four |F|^p integrals
};

struct GrowthProfile {
    double p = 2.0;
    std::vector<GrowthSample> samples;
};

// Evaluator of the interior function on a slice: (y, s) -> field on R x T.
using InteriorEvaluator = std::function<SampledField(double y, double s)>;

inline InteriorEvaluator make_pw_evaluator(const DomainParams& p, ModeCoefficients mc,
                                           const GridSpec& grid) {
    return [p, mc = std::move(mc), grid](double y, double s) {
        return pw_interior_field(p, mc, grid, y, s);
    };
}

inline GrowthProfile hp_growth(const DomainParams& p, const InteriorEvaluator& field_eval,
                               double pnorm, const std::vector<ApproachParams>& grid_ts) {
    GrowthProfile prof;
    prof.p = pnorm;
    prof.samples.reserve(grid_ts.size());
    for (const auto& a : grid_ts) {
        if (!approach_in_range(p, a)) throw not_interior("hp_growth: (t, s) out of range");
        const std::array<std::array<double, 2>, 4> slices = {{{a.s + a.t, a.s},
                                                              {-(a.s + a.t), -a.s},
                                                              {a.s - a.t, a.s},
                                                              {-(a.s - a.t), -a.s}}};
        double val = 0.0;
        for (const auto& sl : slices) val += lp_mass(field_eval(sl[0], sl[1]), pnorm);
        prof.samples.push_back({a.t, a.s, val});
    }
    return prof;
}

// ---------------------------------------------------------------------------
// Convergence profiles
// ---------------------------------------------------------------------------

enum class ApproachPath {
    product, // (t, s) = (pi/2 - d, beta - pi/2 - d), parameter d
    coupled  // t -> beta^-: slice (x + i t, e^{(t/2b)(b - pi/2)} e^{2 pi i gamma})
};

// Distance (L^p, or sup when pnorm is infinite) between the interior
// projection along the path and component 1 of the boundary operator.
inline std::vector<std::pair<double, double>> convergence_profile(
    const DomainParams& p, const BoundaryData& phi, ApproachPath path, double pnorm,
    const std::vector<double>& path_params) {
    const auto spec = to_spectrum(phi);
    const auto limit = boundary_szego_spectrum(p, spec).comp[0];
    std::vector<std::pair<double, double>> out;
    out.reserve(path_params.size());
    for (double q : path_params) {
        double y, s;
        if (path == ApproachPath::product) {
            if (!(q > 0.0) || !(q < pi / 2) || !(q < p.half_strip))
                throw param_out_of_range("convergence_profile: delta out of range");
            y = p.beta - 2.0 * q;
            s = p.half_strip - q;
        } else {
            if (!(q >= 0.0) || !(q < p.beta))
                throw param_out_of_range("convergence_profile: t out of range");
            y = q;
            s = (q / p.beta) * p.half_strip;
        }
        FrequencyField diff = project_spectrum(spec, make_interior_symbol(p, phi.grid, y, s));
        for (std::size_t i = 0; i < diff.coeffs.size(); ++i) diff.coeffs[i] -= limit.coeffs[i];
        const SampledField d = to_physical(diff);
        const double dist = std::isinf(pnorm) ? linf_norm(d) : lp_norm(d, pnorm);
        out.emplace_back(q, dist);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Random band-limited test data
// ---------------------------------------------------------------------------

// i.i.d. complex standard normal coefficients on |xi| <= xi_band, |j| <=
// j_band, tapered by e^{-xi^2/xi_band^2}; zero outside.  Draw order is fixed
// (rows ascending, columns ascending) so fields are platform-reproducible.
struct BandSpec {
    double xi_band = 16.0;
    int j_band = 8;
};

inline FrequencyField random_band_spectrum(const GridSpec& g, gaussian_rng& rng,
                                           const BandSpec& band) {
    FrequencyField F = make_frequency_field(g);
    const int jb = std::min(band.j_band, g.nj);
    for (int j = -jb; j <= jb; ++j) {
        const int r = g.row_of_j(j);
        for (int k = 0; k < g.nx; ++k) {
            const double xi = g.xi(k);
            if (std::abs(xi) > band.xi_band) continue;
            F.coeffs[std::size_t(r) * g.nx + k] =
                rng.cnormal() * std::exp(-xi * xi / (band.xi_band * band.xi_band));
        }
    }
    return F;
}

// mask bit l enables component E_{l+1}
inline BoundaryData random_boundary_data(const GridSpec& g, std::uint64_t seed,
                                         const BandSpec& band, unsigned mask = 0xF) {
    BoundaryData out = make_boundary_data(g);
    for (int l = 0; l < 4; ++l) {
        if (!(mask & (1u << l))) continue;
        gaussian_rng rng(seed, std::uint64_t(l));
        out.comp[std::size_t(l)] = to_physical(random_band_spectrum(g, rng, band));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Empirical operator norms
// ---------------------------------------------------------------------------

struct OpRef {
    enum class Kind { identity, boundary_szego_op, interior_ys, factor };
    Kind kind = Kind::boundary_szego_op;
    OperatorTag tag;      // for Kind::factor
    double y = 0.0, s = 0.0; // for Kind::interior_ys
};

// max over seeded trials of ||op phi||_p / ||phi||_p.  Factor operators act
// on E1 data only, so their trials populate only component 1.
inline double empirical_opnorm(const DomainParams& p, const GridSpec& g, const OpRef& op,
                               double pnorm, int trials, std::uint64_t seed,
                               const BandSpec& band = {}) {
    if (trials < 1) throw param_out_of_range("empirical_opnorm: trials must be >= 1");
    const unsigned mask = (op.kind == OpRef::Kind::factor) ? 0x1 : 0xF;
    std::vector<double> ratios(std::size_t(trials), 0.0);
    parallel_for(std::size_t(trials), [&](std::size_t i) {
        const BoundaryData phi = random_boundary_data(g, seed + 1000003 * i, band, mask);
        const double in_norm = lp_boundary_norm(phi, pnorm);
        if (in_norm == 0.0) return;
        double out_norm = 0.0;
        switch (op.kind) {
            case OpRef::Kind::identity: out_norm = in_norm; break;
            case OpRef::Kind::boundary_szego_op:
                out_norm = lp_boundary_norm(boundary_szego(p, phi), pnorm);
                break;
            case OpRef::Kind::interior_ys:
                out_norm = lp_norm(project_interior(p, phi, op.y, op.s), pnorm);
                break;
            case OpRef::Kind::factor:
                out_norm = lp_norm(factor_apply(p, op.tag, phi), pnorm);
                break;
        }
        ratios[i] = out_norm / in_norm;
    });
    double m = 0.0;
    for (double r : ratios) m = std::max(m, r);
    return m;
}

// ---------------------------------------------------------------------------
// Uniformity study of S_{y,s} over a grid of slices
// ---------------------------------------------------------------------------

struct UniformityStudy {
    std::vector<double> p_list;
    std::vector<std::array<double, 2>> slices;    // (y, s) pairs
    std::vector<std::vector<double>> ratios;      // [p index][slice index]
    double symbol_bound_p2 = 0.0;                 // sup over slices and (xi, j)
};

namespace detail {

// to_physical restricted to data supported on |j| <= jb: x-inverse on the
// populated rows only, then the full gamma inverse.
inline SampledField to_physical_banded(const FrequencyField& F, int jb) {
    SampledField out{F.grid, F.coeffs};
    const GridSpec& g = F.grid;
    const int lo = g.nj - jb;
    x_backward_rows(out.values.data() + std::size_t(lo) * g.nx, g.nx, 2 * jb + 1, g.L);
    gamma_backward(out.values.data(), g.nx, g.ngamma(), g.nj);
    return out;
}

} // namespace detail

// Empirical L^p -> L^p ratios of S_{y,s} over a slice grid, shared trials.
inline UniformityStudy lp_uniformity_study(const DomainParams& p, const GridSpec& g,
                                           const std::vector<std::array<double, 2>>& slices,
                                           const std::vector<double>& p_list, int trials,
                                           std::uint64_t seed, const BandSpec& band = {}) {
    UniformityStudy st;
    st.p_list = p_list;
    st.slices = slices;
    st.ratios.assign(p_list.size(), std::vector<double>(slices.size(), 0.0));

    const int jb = std::min(band.j_band, g.nj);
    const int row_lo = g.nj - jb;
    const int nrows = 2 * jb + 1;
    const std::size_t row0 = std::size_t(row_lo) * g.nx;
    const std::size_t band_len = std::size_t(nrows) * g.nx;

    // shared inputs: banded spectra plus their L^p norms
    std::vector<std::array<std::vector<cplx>, 4>> inputs;
    inputs.resize(std::size_t(trials));
    std::vector<std::vector<double>> in_norm(p_list.size(),
                                             std::vector<double>(std::size_t(trials), 0.0));
    parallel_for(std::size_t(trials), [&](std::size_t i) {
        std::vector<double> mass(p_list.size(), 0.0);
        for (int l = 0; l < 4; ++l) {
            gaussian_rng rng(seed + 1000003 * i, std::uint64_t(l));
            FrequencyField F = random_band_spectrum(g, rng, band);
            inputs[i][std::size_t(l)].assign(F.coeffs.begin() + row0,
                                             F.coeffs.begin() + row0 + band_len);
            const SampledField f = detail::to_physical_banded(F, jb);
            for (std::size_t ip = 0; ip < p_list.size(); ++ip)
                mass[ip] += lp_mass(f, p_list[ip]);
        }
        for (std::size_t ip = 0; ip < p_list.size(); ++ip)
            in_norm[ip][i] = std::pow(mass[ip], 1.0 / p_list[ip]);
    });

    for (std::size_t si = 0; si < slices.size(); ++si) {
        const double y = slices[si][0];
        const double s = slices[si][1];
        if (!is_interior_ys(p, y, s)) throw not_interior("lp_uniformity_study: slice not interior");

        // banded interior symbol for this slice
        std::array<std::vector<double>, 4> w;
        for (int m = 0; m < 4; ++m) w[std::size_t(m)].resize(band_len);
        for (int r = 0; r < nrows; ++r) {
            const int j = (row_lo + r) - g.nj;
            for (int k = 0; k < g.nx; ++k) {
                const double xi = g.xi(k);
                for (int m = 0; m < 4; ++m)
                    w[std::size_t(m)][std::size_t(r) * g.nx + k] =
                        detail::interior_weight(p, m, y, s, xi, j);
            }
        }

        std::vector<std::vector<double>> out_ratio(p_list.size(),
                                                   std::vector<double>(std::size_t(trials), 0.0));
        parallel_for(std::size_t(trials), [&](std::size_t i) {
            FrequencyField G = make_frequency_field(g);
            for (int m = 0; m < 4; ++m) {
                const auto& src = inputs[i][std::size_t(m)];
                const auto& wm = w[std::size_t(m)];
                for (std::size_t q = 0; q < band_len; ++q) G.coeffs[row0 + q] += wm[q] * src[q];
            }
            const SampledField f = detail::to_physical_banded(G, jb);
            for (std::size_t ip = 0; ip < p_list.size(); ++ip)
                out_ratio[ip][i] = lp_norm(f, p_list[ip]) / in_norm[ip][i];
        });
        for (std::size_t ip = 0; ip < p_list.size(); ++ip) {
            double m = 0.0;
            for (double r : out_ratio[ip]) m = std::max(m, r);
            st.ratios[ip][si] = m;
        }

        // exact discrete L2 -> L2 norm of this slice's symbol:
        // sup_(xi,j) sqrt( e^{j s - 2 y xi} / (4 ch ch) )
        double b2 = 0.0;
        for (int r = 0; r < g.ngamma(); ++r) {
            const int j = g.j_of_row(r);
            for (int k = 0; k < g.nx; ++k) {
                const double xi = g.xi(k);
                const double e = j * s - 2.0 * y * xi - detail::worm_log_den(p, xi, j);
                b2 = std::max(b2, std::exp(0.5 * std::min(e, 1400.0)));
            }
        }
        st.symbol_bound_p2 = std::max(st.symbol_bound_p2, b2);
    }
    return st;
}

} // namespace wormhardy
