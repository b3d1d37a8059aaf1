#pragma once

// Hardy spaces on the symmetric strip S_beta = { |Im z| < beta }:
// Paley-Wiener extension, the reproducing (Szego) kernel, the interior
// projection S and its boundary operator, and the summability / conjugate
// kernel pair that appears in the boundary-limit analysis.
//
// The kernel's integral form
//     K(w, z) = (1/4pi) Int e^{i (w - conj z) xi} / ch(2 beta xi) dxi
// is treated as authoritative; evaluated with Int sech(a xi) dxi = pi/a it
// gives K = (1/8beta) sech[pi (w - conj z)/(4 beta)], and the closed form here
// is calibrated to that constant.

#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <utility>
#include <vector>

#include "wormhardy/common.hpp"
#include "wormhardy/grid.hpp"
#include "wormhardy/quadrature.hpp"

namespace wormhardy {

struct StripParams {
    double beta_strip = 0.0; // half-width, > 0
};

inline StripParams make_strip(double beta_strip) {
    if (!(beta_strip > 0.0)) throw param_out_of_range("strip: beta_strip must be positive");
    return StripParams{beta_strip};
}

// Boundary data (phi_+, phi_-) on the two lines Im z = +-beta.
struct StripBoundaryPair {
    Grid1D grid;
    std::vector<cplx> plus;
    std::vector<cplx> minus;
};

inline StripBoundaryPair make_strip_pair(const Grid1D& g) {
    return StripBoundaryPair{g, std::vector<cplx>(g.nx, cplx(0, 0)), std::vector<cplx>(g.nx, cplx(0, 0))};
}

namespace detail {

// max over the grid of b|xi| + log|f(xi)| (-inf where f vanishes)
inline double log_peak(const Grid1D& g, const std::vector<cplx>& fhat, double b) {
    double peak = -std::numeric_limits<double>::infinity();
    for (int k = 0; k < g.nx; ++k) {
        const double m = std::abs(fhat[k]);
        if (m > 0.0) peak = std::max(peak, b * std::abs(g.xi(k)) + std::log(m));
    }
    return peak;
}

// The PW weight e^{b|xi|} |f(xi)| must have decayed at the edge of the grid
// to below 1e-12 of its peak; compared in log scale so nothing overflows.
inline bool weighted_tail_decayed(const Grid1D& g, const std::vector<cplx>& fhat, double b) {
    const double peak = log_peak(g, fhat, b);
    if (peak == -std::numeric_limits<double>::infinity()) return true; // f == 0
    double edge = -std::numeric_limits<double>::infinity();
    for (int k : {0, 1, g.nx - 2, g.nx - 1}) {
        const double m = std::abs(fhat[std::size_t(k)]);
        if (m > 0.0) edge = std::max(edge, b * std::abs(g.xi(k)) + std::log(m));
    }
    return edge <= peak + std::log(1e-12);
}

} // namespace detail

// ---------------------------------------------------------------------------
// Paley-Wiener extension
// ---------------------------------------------------------------------------

// F(z) = (1/2pi) Int f0^(xi) e^{i z xi} dxi from a frequency profile sampled
// on the grid.  Requires |Im z| < beta and a decayed weighted tail.
inline cplx pw_extend(const Grid1D& g, const std::vector<cplx>& f0_hat, cplx z,
                      const StripParams& strip) {
    if (!(std::abs(z.imag()) < strip.beta_strip))
        throw param_out_of_range("pw_extend: z outside the strip");
    if (!detail::weighted_tail_decayed(g, f0_hat, strip.beta_strip))
        throw tail_not_decayed("pw_extend: e^{beta|xi|} f0^ has not decayed on the grid");
    const double x = z.real();
    const double y = z.imag();
    cplx acc(0.0, 0.0);
    for (int k = 0; k < g.nx; ++k) {
        const double xi = g.xi(k);
        const cplx w = scaled_mul(-y * xi, f0_hat[std::size_t(k)]);
        acc += w * cplx(std::cos(x * xi), std::sin(x * xi));
    }
    return acc / (2.0 * g.L);
}

// ---------------------------------------------------------------------------
// Strip kernel
// ---------------------------------------------------------------------------

enum class StripKernelMode { integral, closed_form };

inline cplx strip_kernel(const StripParams& strip, cplx w, cplx z, StripKernelMode mode) {
    const double beta = strip.beta_strip;
    if (!(std::abs(w.imag()) < beta) || !(std::abs(z.imag()) < beta))
        throw param_out_of_range("strip_kernel: arguments must lie in the strip");
    const cplx u = w - std::conj(z);
    if (mode == StripKernelMode::closed_form) {
        return 1.0 / (8.0 * beta * std::cosh(pi * u / (4.0 * beta)));
    }
    // |integrand| <= 2 e^{-(2beta - |Im u|) |xi|}; cut where the tail mass
    // drops below ~1e-17.
    const double rate = 2.0 * beta - std::abs(u.imag());
    const double cut = std::log(2e17 / rate) / rate;
    const auto f = [&](double xi) {
        const double mag = exp_or_zero(-u.imag() * xi - log_cosh(2.0 * beta * xi));
        const double ph = u.real() * xi;
        return mag * cplx(std::cos(ph), std::sin(ph));
    };
    return integrate(f, -cut, cut, 1e-13) / (4.0 * pi);
}

// ---------------------------------------------------------------------------
// Strip projection and its boundary operator
// ---------------------------------------------------------------------------

namespace detail {

// multipliers of (phi+^, phi-^) for evaluation at height y:
//   e^{-(y + beta) xi} / (2 ch 2beta xi),  e^{-(y - beta) xi} / (2 ch 2beta xi)
inline double strip_weight_plus(double beta, double y, double xi) {
    return exp_or_zero(-(y + beta) * xi - log_cosh(2.0 * beta * xi) -
                       0.6931471805599453094172321214581766);
}
inline double strip_weight_minus(double beta, double y, double xi) {
    return exp_or_zero(-(y - beta) * xi - log_cosh(2.0 * beta * xi) -
                       0.6931471805599453094172321214581766);
}

} // namespace detail

// S phi evaluated at one interior point z.
inline cplx strip_project(const StripBoundaryPair& phi, cplx z, const StripParams& strip) {
    const double beta = strip.beta_strip;
    if (!(std::abs(z.imag()) < beta))
        throw param_out_of_range("strip_project: z outside the strip");
    const Grid1D& g = phi.grid;
    const auto fp = profile_to_frequency(g, phi.plus);
    const auto fm = profile_to_frequency(g, phi.minus);
    const double x = z.real();
    const double y = z.imag();
    cplx acc(0.0, 0.0);
    for (int k = 0; k < g.nx; ++k) {
        const double xi = g.xi(k);
        const cplx num = detail::strip_weight_plus(beta, y, xi) * fp[std::size_t(k)] +
                         detail::strip_weight_minus(beta, y, xi) * fm[std::size_t(k)];
        acc += num * cplx(std::cos(x * xi), std::sin(x * xi));
    }
    return acc / (2.0 * g.L);
}

// S phi on the whole horizontal line Im z = y, as an x-profile.
inline std::vector<cplx> strip_project_profile(const StripBoundaryPair& phi, double y,
                                               const StripParams& strip) {
    const double beta = strip.beta_strip;
    if (!(std::abs(y) < beta)) throw param_out_of_range("strip_project_profile: |y| >= beta");
    const Grid1D& g = phi.grid;
    auto fp = profile_to_frequency(g, phi.plus);
    const auto fm = profile_to_frequency(g, phi.minus);
    for (int k = 0; k < g.nx; ++k) {
        const double xi = g.xi(k);
        fp[std::size_t(k)] = detail::strip_weight_plus(beta, y, xi) * fp[std::size_t(k)] +
                             detail::strip_weight_minus(beta, y, xi) * fm[std::size_t(k)];
    }
    return profile_to_physical(g, fp);
}

// 2x2 boundary symbol at xi: rows/cols ordered (+, -), entries
//   [ e^{-2beta xi}  1 ; 1  e^{2beta xi} ] / (2 ch 2beta xi).
inline std::array<double, 3> strip_boundary_symbol(double beta, double xi) {
    const double d = log_cosh(2.0 * beta * xi) + 0.6931471805599453094172321214581766;
    return {exp_or_zero(-2.0 * beta * xi - d), exp_or_zero(-d), exp_or_zero(2.0 * beta * xi - d)};
}

inline StripBoundaryPair strip_boundary_project(const StripBoundaryPair& phi,
                                                const StripParams& strip) {
    const Grid1D& g = phi.grid;
    auto fp = profile_to_frequency(g, phi.plus);
    auto fm = profile_to_frequency(g, phi.minus);
    for (int k = 0; k < g.nx; ++k) {
        const auto s = strip_boundary_symbol(strip.beta_strip, g.xi(k));
        const cplx p = fp[std::size_t(k)];
        const cplx m = fm[std::size_t(k)];
        fp[std::size_t(k)] = s[0] * p + s[1] * m;
        fm[std::size_t(k)] = s[1] * p + s[2] * m;
    }
    return StripBoundaryPair{g, profile_to_physical(g, fp), profile_to_physical(g, fm)};
}

// ---------------------------------------------------------------------------
// Singular kernel pair
// ---------------------------------------------------------------------------

// K_eps(y)  = (1/2beta) ch(pi y/4beta) sin(pi eps/4beta) / (sh^2 + sin^2)
// K~_eps(y) = (1/2beta) sh(pi y/4beta) cos(pi eps/4beta) / (sh^2 + sin^2)
// where sh^2 + sin^2 means sh^2(pi y/4beta) + sin^2(pi eps/4beta).
// {K_eps / 2} is a summability kernel: Int K_eps = 2 for every eps.
inline std::pair<double, double> singular_kernel_pair(double eps, double y,
                                                      const StripParams& strip) {
    const double beta = strip.beta_strip;
    if (!(eps > 0.0) || !(eps < beta))
        throw eps_out_of_range("singular_kernel_pair: eps must lie in (0, beta)");
    const double u = pi * y / (4.0 * beta);
    const double e = pi * eps / (4.0 * beta);
    const double se = std::sin(e);
    const double ce = std::cos(e);
    if (std::abs(u) > 350.0) {
        // ch/sh^2 and 1/sh both ~ 2 e^{-|u|}
        const double t = 2.0 * std::exp(-std::abs(u)) / (2.0 * beta);
        return {t * se, t * ce * (y >= 0 ? 1.0 : -1.0)};
    }
    const double sh = std::sinh(u);
    const double den = sh * sh + se * se;
    return {std::cosh(u) * se / (2.0 * beta * den), sh * ce / (2.0 * beta * den)};
}

// Int_R K_eps(y) dy by quadrature (analytically equal to 2 for every eps).
inline double summability_mass(double eps, const StripParams& strip, double abs_tol = 1e-10) {
    const double beta = strip.beta_strip;
    const double a = pi / (4.0 * beta);
    const double e = pi * eps / (4.0 * beta);
    // K_eps <= (sin e / beta) e^{-|u|} / (1 - e^{-2|u|})-ish; cut when the
    // remaining mass is far below tolerance.
    const double cut = (50.0 + std::abs(std::log(std::sin(e)))) / a;
    const auto f = [&](double y) { return singular_kernel_pair(eps, y, strip).first; };
    return integrate_real(f, -cut, cut, abs_tol);
}

} // namespace wormhardy
