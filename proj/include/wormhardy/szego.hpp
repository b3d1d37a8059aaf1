#pragma once

// The Szego projection of the worm domain and its relatives, all realized as
// multiplier operators in the mixed (xi, j) frequency space.
//
// With boundary data phi = (phi_1..phi_4) on E_1..E_4, the interior value at
// (x + i y, e^{s/2} e^{2 pi i gamma}) has per-component symbols
//
//   e^{(j/2)(s + sg_m h)} e^{-(y + v_m) xi} / ( 4 ch(pi xi) ch[(2b - pi)(xi - j/2)] )
//
// where v_m = Im z1 and sg_m = sign(log|z2|^2) on E_m, h = b - pi/2.  The
// boundary operator is the evaluation at (y, s) = (v_l, sg_l h); its 4x4
// symbol matrix M(xi, j) is real, symmetric and idempotent (a rank-one
// orthogonal projection at every frequency).  Every symbol is evaluated as
// exp(linear exponent - log denominator), so growing numerators are always
// paired with their dominating ch factors before exponentiation.

#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <map>
#include <vector>

#include "wormhardy/common.hpp"
#include "wormhardy/domain.hpp"
#include "wormhardy/grid.hpp"

namespace wormhardy {

// ---------------------------------------------------------------------------
// Data carried on the distinguished boundary
// ---------------------------------------------------------------------------

struct BoundaryData {
    GridSpec grid;
    std::array<SampledField, 4> comp; // E1..E4

    SampledField& operator[](int l) { return comp[std::size_t(l)]; }
    const SampledField& operator[](int l) const { return comp[std::size_t(l)]; }
};

struct BoundarySpectrum {
    GridSpec grid;
    std::array<FrequencyField, 4> comp;
};

inline BoundaryData make_boundary_data(const GridSpec& g) {
    return BoundaryData{g, {make_field(g), make_field(g), make_field(g), make_field(g)}};
}

inline BoundarySpectrum to_spectrum(const BoundaryData& phi) {
    return BoundarySpectrum{phi.grid,
                            {to_frequency(phi.comp[0]), to_frequency(phi.comp[1]),
                             to_frequency(phi.comp[2]), to_frequency(phi.comp[3])}};
}

inline BoundaryData to_boundary_data(const BoundarySpectrum& F) {
    return BoundaryData{F.grid,
                        {to_physical(F.comp[0]), to_physical(F.comp[1]),
                         to_physical(F.comp[2]), to_physical(F.comp[3])}};
}

// Paley-Wiener data: one frequency profile g_j per stored mode.
struct ModeCoefficients {
    Grid1D grid;
    std::map<int, std::vector<cplx>> g;
};

// ---------------------------------------------------------------------------
// Symbols
// ---------------------------------------------------------------------------

namespace detail {

inline constexpr double ln2 = 0.6931471805599453094172321214581766;
inline constexpr double ln4 = 1.3862943611198906188344642429163531;

// exponent of the component-m numerator: a_m = (j/2) sg_m h - v_m xi
inline std::array<double, 4> worm_numerator_exponents(const DomainParams& p, double xi, int j) {
    const double jh = 0.5 * j * p.half_strip;
    return {jh - p.beta * xi, jh - (p.beta - pi) * xi, -jh + p.beta * xi,
            -jh + (p.beta - pi) * xi};
}

// log( 4 ch(pi xi) ch[(2b - pi)(xi - j/2)] ) = log sum_m e^{2 a_m}, evaluated
// as a log-sum-exp so that the projector normalization sum_m e^{2 a_m - den}
// equals 1 to machine precision even at extreme frequencies.
inline double worm_log_den(const DomainParams& p, double xi, int j) {
    const auto a = worm_numerator_exponents(p, xi, j);
    const double m = std::max(std::max(a[0], a[1]), std::max(a[2], a[3]));
    double s = 0.0;
    for (double ai : a) s += std::exp(2.0 * (ai - m));
    return 2.0 * m + std::log(s);
}

// interior symbol of component m at slice (y, s)
inline double interior_weight(const DomainParams& p, int m, double y, double s, double xi,
                              int j) {
    const auto a = worm_numerator_exponents(p, xi, j);
    return exp_or_zero(0.5 * j * s - y * xi + a[std::size_t(m)] - worm_log_den(p, xi, j));
}

// boundary symbol matrix entry M_lm(xi, j)
inline double boundary_weight(const DomainParams& p, int l, int m, double xi, int j) {
    const auto a = worm_numerator_exponents(p, xi, j);
    return exp_or_zero(a[std::size_t(l)] + a[std::size_t(m)] - worm_log_den(p, xi, j));
}

// factor symbols of the difference operators; u = xi - j/2 throughout

// m_s(u) = e^{-(h + s) u} / (4 ch[(2b - pi) u])
inline double sym_lambda_s(const DomainParams& p, double s, double u) {
    return exp_or_zero(-(p.half_strip + s) * u - log_cosh(p.weight_scale * u) - ln4);
}

// m'_{y,s}(xi) = e^{-(pi/2 - s + y) xi} / ch(pi xi)
inline double sym_lambda_prime(double y, double s, double xi) {
    return exp_or_zero(-(pi / 2 - s + y) * xi - log_cosh(pi * xi));
}

// (e^{-pi xi} -+ e^{-(pi/2 + t) xi}) / (2 ch pi xi); sign = -1 gives Xi^I
inline double sym_xi_t(double t, double xi, int sign) {
    const double base = -pi * xi - log_cosh(pi * xi) - ln2;
    const double dt = pi / 2 - t;
    if (sign < 0) {
        if (std::abs(dt * xi) < 0.5) return -exp_or_zero(base) * std::expm1(dt * xi);
        return exp_or_zero(base) - exp_or_zero(-(pi / 2 + t) * xi - log_cosh(pi * xi) - ln2);
    }
    return exp_or_zero(base) + exp_or_zero(-(pi / 2 + t) * xi - log_cosh(pi * xi) - ln2);
}

// (e^{-(2b - pi) u} +- e^{-(h + s) u}) / (4 ch[(2b - pi) u]); sign = -1 gives Lambda^II
inline double sym_lambda_big(const DomainParams& p, double s, double u, int sign) {
    const double base = -p.weight_scale * u - log_cosh(p.weight_scale * u) - ln4;
    if (sign < 0) {
        const double ds = p.half_strip - s;
        if (std::abs(ds * u) < 0.5) return -exp_or_zero(base) * std::expm1(ds * u);
        return exp_or_zero(base) -
               exp_or_zero(-(p.half_strip + s) * u - log_cosh(p.weight_scale * u) - ln4);
    }
    return exp_or_zero(base) +
           exp_or_zero(-(p.half_strip + s) * u - log_cosh(p.weight_scale * u) - ln4);
}

} // namespace detail

// M(xi, j), the 4x4 boundary projector symbol.
inline std::array<std::array<double, 4>, 4> boundary_symbol_matrix(const DomainParams& p,
                                                                   double xi, int j) {
    std::array<std::array<double, 4>, 4> m{};
    for (int l = 0; l < 4; ++l)
        for (int c = 0; c < 4; ++c) m[std::size_t(l)][std::size_t(c)] = detail::boundary_weight(p, l, c, xi, j);
    return m;
}

// ---------------------------------------------------------------------------
// Interior projection S_{y,s}
// ---------------------------------------------------------------------------

// Precomputed interior symbol rows for one slice (y, s); reusable across any
// number of inputs on the same grid.
struct InteriorSymbol {
    GridSpec grid;
    double y = 0.0, s = 0.0;
    std::array<std::vector<double>, 4> w; // w[m][row * nx + k]
};

inline InteriorSymbol make_interior_symbol(const DomainParams& p, const GridSpec& g, double y,
                                           double s) {
    if (!is_interior_ys(p, y, s))
        throw not_interior("project_interior: (y, s) outside the domain");
    InteriorSymbol sym{g, y, s, {}};
    const std::size_t total = std::size_t(g.nx) * g.ngamma();
    for (int m = 0; m < 4; ++m) sym.w[std::size_t(m)].resize(total);
    for (int r = 0; r < g.ngamma(); ++r) {
        const int j = g.j_of_row(r);
        for (int k = 0; k < g.nx; ++k) {
            const double xi = g.xi(k);
            const std::size_t idx = std::size_t(r) * g.nx + k;
            const auto a = detail::worm_numerator_exponents(p, xi, j);
            const double base = 0.5 * j * s - y * xi - detail::worm_log_den(p, xi, j);
            for (int m = 0; m < 4; ++m)
                sym.w[std::size_t(m)][idx] = exp_or_zero(base + a[std::size_t(m)]);
        }
    }
    return sym;
}

inline FrequencyField project_spectrum(const BoundarySpectrum& phi, const InteriorSymbol& sym) {
    if (phi.grid != sym.grid) throw grid_mismatch("project_spectrum: grid mismatch");
    FrequencyField out = make_frequency_field(phi.grid);
    const std::size_t total = out.coeffs.size();
    for (int m = 0; m < 4; ++m) {
        const auto& w = sym.w[std::size_t(m)];
        const auto& src = phi.comp[std::size_t(m)].coeffs;
        for (std::size_t i = 0; i < total; ++i) out.coeffs[i] += w[i] * src[i];
    }
    return out;
}

// S phi at the slice (x + i y, e^{s/2} e^{2 pi i gamma}), as a field on R x T.
inline SampledField project_interior(const DomainParams& p, const BoundaryData& phi, double y,
                                     double s) {
    const auto sym = make_interior_symbol(p, phi.grid, y, s);
    return to_physical(project_spectrum(to_spectrum(phi), sym));
}

// ---------------------------------------------------------------------------
// Boundary operator S~
// ---------------------------------------------------------------------------

inline BoundarySpectrum boundary_szego_spectrum(const DomainParams& p,
                                                const BoundarySpectrum& phi) {
    const GridSpec& g = phi.grid;
    BoundarySpectrum out{g,
                         {make_frequency_field(g), make_frequency_field(g),
                          make_frequency_field(g), make_frequency_field(g)}};
    // M(xi, j) = e e^T with e_l = exp(a_l - logden/2); sum_l e_l^2 = 1, so the
    // entries never overflow and the rank-one projection structure is exact.
    for (int r = 0; r < g.ngamma(); ++r) {
        const int j = g.j_of_row(r);
        for (int k = 0; k < g.nx; ++k) {
            const double xi = g.xi(k);
            const std::size_t idx = std::size_t(r) * g.nx + k;
            const auto a = detail::worm_numerator_exponents(p, xi, j);
            const double half_den = 0.5 * detail::worm_log_den(p, xi, j);
            double e[4];
            for (int l = 0; l < 4; ++l) e[l] = exp_or_zero(a[std::size_t(l)] - half_den);
            cplx dot(0.0, 0.0);
            for (int c = 0; c < 4; ++c) dot += e[c] * phi.comp[std::size_t(c)].coeffs[idx];
            for (int l = 0; l < 4; ++l) out.comp[std::size_t(l)].coeffs[idx] = e[l] * dot;
        }
    }
    return out;
}

inline BoundaryData boundary_szego(const DomainParams& p, const BoundaryData& phi) {
    return to_boundary_data(boundary_szego_spectrum(p, to_spectrum(phi)));
}

// ---------------------------------------------------------------------------
// Factor operators
// ---------------------------------------------------------------------------

// The paper's one-component operators acting on phi_1 (data on E1).  The
// compositions satisfy, exactly at symbol level,
//   T^I_{t,s} = Lambda^I_s o Xi^I_t,  T^II_{t,s} = Lambda^II_s o Xi^II_t,
//   S_{y,s}   = lambda'_{y,s} o lambda_s           (on mode-finite data),
//   S~_1 - S_{s+t,s} = T^I_{t,s} + T^II_{t,s}.
struct OperatorTag {
    enum class Kind {
        lambda_s,        // shifted multiplier m_s(xi - j/2)
        lambda_prime_ys, // x-only multiplier m'_{y,s}
        LambdaI_s,
        XiI_t,
        LambdaII_s,
        XiII_t,
        TI_ts,
        TII_ts
    };
    Kind kind = Kind::lambda_s;
    double t = 0.0;
    double s = 0.0;
    double y = 0.0;
};

inline SampledField factor_apply(const DomainParams& p, const OperatorTag& tag,
                                 const BoundaryData& phi) {
    const auto need_s = [&](double s) {
        if (!(s >= 0.0 && s <= p.half_strip))
            throw param_out_of_range("factor_apply: s outside [0, beta - pi/2]");
    };
    const auto need_t = [&](double t) {
        if (!(t >= 0.0 && t <= pi / 2))
            throw param_out_of_range("factor_apply: t outside [0, pi/2]");
    };

    FrequencyField F = to_frequency(phi.comp[0]);
    const GridSpec& g = F.grid;
    using K = OperatorTag::Kind;
    switch (tag.kind) {
        case K::lambda_s: need_s(tag.s); break;
        case K::lambda_prime_ys:
            if (!is_interior_ys(p, tag.y, tag.s))
                throw param_out_of_range("factor_apply: (y, s) not interior");
            break;
        case K::LambdaI_s:
        case K::LambdaII_s: need_s(tag.s); break;
        case K::XiI_t:
        case K::XiII_t: need_t(tag.t); break;
        case K::TI_ts:
        case K::TII_ts:
            need_t(tag.t);
            need_s(tag.s);
            break;
    }

    for (int r = 0; r < g.ngamma(); ++r) {
        const int j = g.j_of_row(r);
        for (int k = 0; k < g.nx; ++k) {
            const double xi = g.xi(k);
            const double u = xi - 0.5 * j;
            double sym = 0.0;
            switch (tag.kind) {
                case K::lambda_s: sym = detail::sym_lambda_s(p, tag.s, u); break;
                case K::lambda_prime_ys: sym = detail::sym_lambda_prime(tag.y, tag.s, xi); break;
                case K::LambdaI_s: sym = detail::sym_lambda_big(p, tag.s, u, +1); break;
                case K::XiI_t: sym = detail::sym_xi_t(tag.t, xi, -1); break;
                case K::LambdaII_s: sym = detail::sym_lambda_big(p, tag.s, u, -1); break;
                case K::XiII_t: sym = detail::sym_xi_t(tag.t, xi, +1); break;
                case K::TI_ts:
                    sym = detail::sym_lambda_big(p, tag.s, u, +1) * detail::sym_xi_t(tag.t, xi, -1);
                    break;
                case K::TII_ts:
                    sym = detail::sym_lambda_big(p, tag.s, u, -1) * detail::sym_xi_t(tag.t, xi, +1);
                    break;
            }
            F.coeffs[std::size_t(r) * g.nx + k] *= sym;
        }
    }
    return to_physical(F);
}

// ---------------------------------------------------------------------------
// Mode decomposition
// ---------------------------------------------------------------------------

// j-th torus coefficient of a field, as an x-profile.
inline std::vector<cplx> mode_extract(const SampledField& f, int j) {
    const GridSpec& g = f.grid;
    if (std::abs(j) > g.nj) throw mode_out_of_grid("mode_extract: |j| exceeds Nj");
    const int ng = g.ngamma();
    std::vector<cplx> out(std::size_t(g.nx), cplx(0.0, 0.0));
    for (int n = 0; n < ng; ++n) {
        const double ph = -2.0 * pi * j * double(n) / ng;
        const cplx w = cplx(std::cos(ph), std::sin(ph)) / double(ng);
        const cplx* row = f.values.data() + std::size_t(n) * g.nx;
        for (int m = 0; m < g.nx; ++m) out[std::size_t(m)] += w * row[m];
    }
    return out;
}

// ---------------------------------------------------------------------------
// Paley-Wiener synthesis
// ---------------------------------------------------------------------------

namespace detail {

// PW admissibility of one profile: |g_j| against the H^2 weight
// sqrt(ch(pi xi) ch[(2b - pi)(xi - j/2)]) must decay at the grid edge.
inline void check_pw_profile(const DomainParams& p, const Grid1D& g, const std::vector<cplx>& gj,
                             int j) {
    const auto logw = [&](int k) {
        const double m = std::abs(gj[std::size_t(k)]);
        if (m == 0.0) return -std::numeric_limits<double>::infinity();
        const double xi = g.xi(k);
        return std::log(m) +
               0.5 * (log_cosh(pi * xi) + log_cosh(p.weight_scale * (xi - 0.5 * j)));
    };
    double peak = -std::numeric_limits<double>::infinity();
    for (int k = 0; k < g.nx; ++k) peak = std::max(peak, logw(k));
    if (peak == -std::numeric_limits<double>::infinity()) return;
    double edge = -std::numeric_limits<double>::infinity();
    for (int k : {0, 1, g.nx - 2, g.nx - 1}) edge = std::max(edge, logw(k));
    if (!(edge <= peak + std::log(1e-12)))
        throw pw_condition_violated("pw_worm_synthesize: weighted profile not decayed on grid");
}

} // namespace detail

// Boundary data of the H^2 function with mode profiles {g_j}:
//   phi_l = sum_j e^{(j/2) sg_l h} e^{2 pi i j gamma} F^{-1}[ e^{-v_l xi} g_j ](x).
inline BoundaryData pw_worm_synthesize(const DomainParams& p, const ModeCoefficients& mc,
                                       const GridSpec& grid) {
    if (!(mc.grid == grid.xgrid()))
        throw grid_mismatch("pw_worm_synthesize: mode profiles on a different x-grid");
    BoundaryData out = make_boundary_data(grid);
    for (const auto& [j, gj] : mc.g) {
        if (std::abs(j) > grid.nj) throw mode_out_of_grid("pw_worm_synthesize: |j| exceeds Nj");
        if (int(gj.size()) != grid.nx)
            throw grid_mismatch("pw_worm_synthesize: profile length mismatch");
        detail::check_pw_profile(p, mc.grid, gj, j);
        for (int l = 0; l < 4; ++l) {
            const auto c = all_components[std::size_t(l)];
            const double v = component_im_z1(p, c);
            std::vector<cplx> weighted(std::size_t(grid.nx));
            for (int k = 0; k < grid.nx; ++k)
                weighted[std::size_t(k)] = scaled_mul(-v * mc.grid.xi(k), gj[std::size_t(k)]);
            const auto prof = profile_to_physical(mc.grid, std::move(weighted));
            const double amp = std::exp(0.5 * j * component_sign(c) * p.half_strip);
            for (int n = 0; n < grid.ngamma(); ++n) {
                const double ph = 2.0 * pi * j * grid.gamma(n);
                const cplx w = amp * cplx(std::cos(ph), std::sin(ph));
                cplx* row = out.comp[std::size_t(l)].values.data() + std::size_t(n) * grid.nx;
                for (int m = 0; m < grid.nx; ++m) row[m] += w * prof[std::size_t(m)];
            }
        }
    }
    return out;
}

// The interior H^2 function realized by {g_j} on the slice (y, s):
//   F(x + i y, e^{s/2} e^{2 pi i gamma}) = sum_j e^{j s/2} e^{2 pi i j gamma}
//                                          F^{-1}[ e^{-y xi} g_j ](x).
inline SampledField pw_interior_field(const DomainParams& p, const ModeCoefficients& mc,
                                      const GridSpec& grid, double y, double s) {
    if (!is_interior_ys(p, y, s)) throw not_interior("pw_interior_field: slice not interior");
    if (!(mc.grid == grid.xgrid()))
        throw grid_mismatch("pw_interior_field: mode profiles on a different x-grid");
    SampledField out = make_field(grid);
    for (const auto& [j, gj] : mc.g) {
        std::vector<cplx> weighted(std::size_t(grid.nx));
        for (int k = 0; k < grid.nx; ++k)
            weighted[std::size_t(k)] = scaled_mul(-y * mc.grid.xi(k), gj[std::size_t(k)]);
        const auto prof = profile_to_physical(mc.grid, std::move(weighted));
        const double amp = std::exp(0.5 * j * s);
        for (int n = 0; n < grid.ngamma(); ++n) {
            const double ph = 2.0 * pi * j * grid.gamma(n);
            const cplx w = amp * cplx(std::cos(ph), std::sin(ph));
            cplx* row = out.values.data() + std::size_t(n) * grid.nx;
            for (int m = 0; m < grid.nx; ++m) row[m] += w * prof[std::size_t(m)];
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Density mollifier
// ---------------------------------------------------------------------------

// Multiplication by G^eps(z1) = 1 / (1 + eps (2 beta + i z1)) on each
// component, z1 = x + i Im z1|_{E_l}.  |G^eps| <= 1 on every component.
inline BoundaryData mollify(const DomainParams& p, const BoundaryData& phi, double eps) {
    if (!(eps > 0.0)) throw param_out_of_range("mollify: eps must be positive");
    BoundaryData out = phi;
    for (int l = 0; l < 4; ++l) {
        const double v = component_im_z1(p, all_components[std::size_t(l)]);
        const double re = 1.0 + eps * (2.0 * p.beta - v);
        for (int m = 0; m < phi.grid.nx; ++m) {
            const cplx gval = 1.0 / cplx(re, eps * phi.grid.x(m));
            for (int n = 0; n < phi.grid.ngamma(); ++n)
                out.comp[std::size_t(l)].at(m, n) *= gval;
        }
    }
    return out;
}

} // namespace wormhardy
