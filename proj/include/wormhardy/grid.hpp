#pragma once

// Discrete functions on R x T and the mixed transform: Fourier transform in
// x, Fourier series in gamma.  Conventions, fixed project-wide:
//
//   forward in x:   f^(xi)  = Int f(x) e^{-i x xi} dx        (no prefactor)
//   inverse in x:   f(x)    = (1/2pi) Int f^(xi) e^{i x xi} dxi
//   torus:          c_j     = Int_0^1 f(gamma) e^{-2 pi i j gamma} dgamma
//
// Sampling: x_m = -L + m 2L/Nx, gamma_n = n/Ngamma, xi_k = (k - Nx/2) pi/L.
// With these scalings to_physical(to_frequency(f)) is the identity up to FFT
// rounding, and the discrete Plancherel identity
//   ||f||^2_{L2(RxT)} = (1/2pi) sum_j Int |F(xi,j)|^2 dxi
// holds exactly.

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <map>
#include <tuple>
#include <vector>

#include <fftw3.h>

#include "wormhardy/common.hpp"

namespace wormhardy {

// ---------------------------------------------------------------------------
// Grids
// ---------------------------------------------------------------------------

struct Grid1D {
    double L = 0.0;
    int nx = 0;

    double dx() const { return 2.0 * L / nx; }
    double dxi() const { return pi / L; }
    double x(int m) const { return -L + m * dx(); }
    double xi(int k) const { return (k - nx / 2) * dxi(); }
    double xi_max() const { return nx / 2 * dxi(); }
    bool operator==(const Grid1D& o) const { return L == o.L && nx == o.nx; }
};

struct GridSpec {
    double L = 0.0; // x window is [-L, L)
    int nx = 0;     // power of two, >= 8
    int nj = 0;     // torus modes kept: |j| <= nj

    int ngamma() const { return 2 * nj + 1; }
    double dx() const { return 2.0 * L / nx; }
    double dxi() const { return pi / L; }
    double x(int m) const { return -L + m * dx(); }
    double xi(int k) const { return (k - nx / 2) * dxi(); }
    double xi_max() const { return nx / 2 * dxi(); }
    double gamma(int n) const { return double(n) / ngamma(); }
    int j_of_row(int n) const { return n - nj; }
    int row_of_j(int j) const { return j + nj; }
    Grid1D xgrid() const { return {L, nx}; }
    bool operator==(const GridSpec& o) const { return L == o.L && nx == o.nx && nj == o.nj; }
    bool operator!=(const GridSpec& o) const { return !(*this == o); }
};

inline bool is_pow2(int n) { return n > 0 && (n & (n - 1)) == 0; }

inline GridSpec make_grid(double L, int nx, int nj) {
    if (!(L > 0.0)) throw param_out_of_range("grid: L must be positive");
    if (nx < 8 || !is_pow2(nx)) throw param_out_of_range("grid: Nx must be a power of two >= 8");
    if (nj < 0) throw param_out_of_range("grid: Nj must be >= 0");
    return GridSpec{L, nx, nj};
}

// f(x_m, gamma_n) stored row-major in gamma: values[n * nx + m].
struct SampledField {
    GridSpec grid;
    std::vector<cplx> values;

    cplx& at(int m, int n) { return values[std::size_t(n) * grid.nx + m]; }
    const cplx& at(int m, int n) const { return values[std::size_t(n) * grid.nx + m]; }
};

// F(xi_k, j) stored row-major in j: coeffs[(j + nj) * nx + k].
struct FrequencyField {
    GridSpec grid;
    std::vector<cplx> coeffs;

    cplx& at(int k, int j) { return coeffs[std::size_t(grid.row_of_j(j)) * grid.nx + k]; }
    const cplx& at(int k, int j) const { return coeffs[std::size_t(grid.row_of_j(j)) * grid.nx + k]; }
};

inline SampledField make_field(const GridSpec& g) {
    return SampledField{g, std::vector<cplx>(std::size_t(g.nx) * g.ngamma(), cplx(0.0, 0.0))};
}

inline FrequencyField make_frequency_field(const GridSpec& g) {
    return FrequencyField{g, std::vector<cplx>(std::size_t(g.nx) * g.ngamma(), cplx(0.0, 0.0))};
}

// ---------------------------------------------------------------------------
// FFTW plan cache
// ---------------------------------------------------------------------------

namespace detail {

// Plans are created once per shape under a lock; fftw_execute_dft on a cached
// plan is thread-safe.  FFTW_UNALIGNED lets plans run on std::vector storage.
class fft_engine {
public:
    static fft_engine& instance() {
        static fft_engine e;
        return e;
    }

    // batched length-n transforms over contiguous rows: data[r*n + i]
    void rows(cplx* data, int n, int nrows, int sign) {
        fftw_plan p = plan(0, n, nrows, sign);
        auto* d = reinterpret_cast<fftw_complex*>(data);
        fftw_execute_dft(p, d, d);
    }

    // batched length-n transforms striding across rows: data[i*stride + c]
    void cols(cplx* data, int n, int stride, int sign) {
        fftw_plan p = plan(1, n, stride, sign);
        auto* d = reinterpret_cast<fftw_complex*>(data);
        fftw_execute_dft(p, d, d);
    }

private:
    fft_engine() = default;

    fftw_plan plan(int axis, int n, int howmany, int sign) {
        const auto key = std::make_tuple(axis, n, howmany, sign);
        std::lock_guard<std::mutex> lock(mu_);
        auto it = plans_.find(key);
        if (it != plans_.end()) return it->second;
        std::vector<cplx> scratch(std::size_t(n) * howmany);
        auto* d = reinterpret_cast<fftw_complex*>(scratch.data());
        const int dims[1] = {n};
        fftw_plan p;
        if (axis == 0) {
            p = fftw_plan_many_dft(1, dims, howmany, d, nullptr, 1, n, d, nullptr, 1, n,
                                   sign, FFTW_ESTIMATE | FFTW_UNALIGNED);
        } else {
            p = fftw_plan_many_dft(1, dims, howmany, d, nullptr, howmany, 1, d, nullptr,
                                   howmany, 1, sign, FFTW_ESTIMATE | FFTW_UNALIGNED);
        }
        plans_.emplace(key, p);
        return p;
    }

    std::mutex mu_;
    std::map<std::tuple<int, int, int, int>, fftw_plan> plans_;
};

// x-axis forward on nrows contiguous rows, in place:
//   row[kk] <- dx * (-1)^kk * DFT(row)[(kk + nx/2) mod nx]
inline void x_forward_rows(cplx* data, int nx, int nrows, double L) {
    fft_engine::instance().rows(data, nx, nrows, FFTW_FORWARD);
    const double dx = 2.0 * L / nx;
    for (int r = 0; r < nrows; ++r) {
        cplx* row = data + std::size_t(r) * nx;
        std::rotate(row, row + nx / 2, row + nx);
        for (int k = 0; k < nx; ++k) row[k] *= (k & 1) ? -dx : dx;
    }
}

// x-axis inverse, in place: row[m] <- (1/2L) sum_k row[kk] e^{i x_m xi_k}
inline void x_backward_rows(cplx* data, int nx, int nrows, double L) {
    for (int r = 0; r < nrows; ++r) {
        cplx* row = data + std::size_t(r) * nx;
        for (int k = 1; k < nx; k += 2) row[k] = -row[k];
        std::rotate(row, row + nx / 2, row + nx);
    }
    fft_engine::instance().rows(data, nx, nrows, FFTW_BACKWARD);
    const double scale = 1.0 / (2.0 * L);
    const std::size_t total = std::size_t(nx) * nrows;
    for (std::size_t i = 0; i < total; ++i) data[i] *= scale;
}

// gamma-axis forward across rows (row r holds gamma_n = n/ngam before,
// mode j = r - nj after), in place.
inline void gamma_forward(cplx* data, int nx, int ngam, int nj) {
    if (ngam <= 1) return;
    fft_engine::instance().cols(data, ngam, nx, FFTW_FORWARD);
    const auto row_bytes = std::size_t(nx);
    std::rotate(data, data + std::size_t(nj + 1) * row_bytes, data + std::size_t(ngam) * row_bytes);
    const double scale = 1.0 / ngam;
    const std::size_t total = std::size_t(nx) * ngam;
    for (std::size_t i = 0; i < total; ++i) data[i] *= scale;
}

inline void gamma_backward(cplx* data, int nx, int ngam, int nj) {
    if (ngam <= 1) return;
    const auto row_bytes = std::size_t(nx);
    std::rotate(data, data + std::size_t(nj) * row_bytes, data + std::size_t(ngam) * row_bytes);
    fft_engine::instance().cols(data, ngam, nx, FFTW_BACKWARD);
}

} // namespace detail

// ---------------------------------------------------------------------------
// Mixed transform
// ---------------------------------------------------------------------------

inline FrequencyField to_frequency(const SampledField& f) {
    FrequencyField out{f.grid, f.values};
    detail::x_forward_rows(out.coeffs.data(), f.grid.nx, f.grid.ngamma(), f.grid.L);
    detail::gamma_forward(out.coeffs.data(), f.grid.nx, f.grid.ngamma(), f.grid.nj);
    return out;
}

inline SampledField to_physical(const FrequencyField& F) {
    SampledField out{F.grid, F.coeffs};
    detail::gamma_backward(out.values.data(), F.grid.nx, F.grid.ngamma(), F.grid.nj);
    detail::x_backward_rows(out.values.data(), F.grid.nx, F.grid.ngamma(), F.grid.L);
    return out;
}

// 1-D profiles (used for strip boundary data and the mode profiles g_j)
inline std::vector<cplx> profile_to_frequency(const Grid1D& g, std::vector<cplx> v) {
    detail::x_forward_rows(v.data(), g.nx, 1, g.L);
    return v;
}

inline std::vector<cplx> profile_to_physical(const Grid1D& g, std::vector<cplx> v) {
    detail::x_backward_rows(v.data(), g.nx, 1, g.L);
    return v;
}

// ---------------------------------------------------------------------------
// Multipliers
// ---------------------------------------------------------------------------

// A family xi -> m(xi, j), optionally of the half-integer shifted form
// m(xi - j/2) for a one-variable symbol.
struct MultiplierSpec {
    std::function<cplx(double, int)> symbol;  // used when !shift_half_j
    std::function<cplx(double)> shifted;      // used when shift_half_j
    bool shift_half_j = false;

    static MultiplierSpec full(std::function<cplx(double, int)> fn) {
        MultiplierSpec m;
        m.symbol = std::move(fn);
        return m;
    }
    static MultiplierSpec half_shifted(std::function<cplx(double)> fn) {
        MultiplierSpec m;
        m.shifted = std::move(fn);
        m.shift_half_j = true;
        return m;
    }

    cplx eval(double xi, int j) const {
        return shift_half_j ? shifted(xi - 0.5 * j) : symbol(xi, j);
    }
};

inline FrequencyField apply_multiplier(const FrequencyField& F, const MultiplierSpec& m) {
    FrequencyField out{F.grid, std::vector<cplx>(F.coeffs.size())};
    const int nx = F.grid.nx;
    const int ng = F.grid.ngamma();
    for (int r = 0; r < ng; ++r) {
        const int j = F.grid.j_of_row(r);
        const cplx* in = F.coeffs.data() + std::size_t(r) * nx;
        cplx* dst = out.coeffs.data() + std::size_t(r) * nx;
        for (int k = 0; k < nx; ++k) {
            const cplx s = m.eval(F.grid.xi(k), j);
            if (!(std::abs(s) <= 1e300))
                throw symbol_overflow("apply_multiplier: symbol exceeds 1e300 on the grid");
            dst[k] = s * in[k];
        }
    }
    return out;
}

// Mihlin diagnostic: max over a sample of [lo, hi] of |m| + |xi m'|, with the
// derivative by central differences at step 1e-5 (1 + |xi|).
inline double mihlin_bound(const MultiplierSpec& m, double lo, double hi, int j = 0,
                           int samples = 2001) {
    if (!(hi > lo)) throw param_out_of_range("mihlin_bound: empty interval");
    double bound = 0.0;
    for (int i = 0; i < samples; ++i) {
        const double xi = lo + (hi - lo) * double(i) / (samples - 1);
        const double h = 1e-5 * (1.0 + std::abs(xi));
        const cplx v = m.eval(xi, j);
        const cplx d = (m.eval(xi + h, j) - m.eval(xi - h, j)) / (2.0 * h);
        const double b = std::abs(v) + std::abs(xi * d);
        if (!std::isfinite(b)) throw non_finite("mihlin_bound: symbol or derivative not finite");
        bound = std::max(bound, b);
    }
    return bound;
}

// ---------------------------------------------------------------------------
// Norms on the grid
// ---------------------------------------------------------------------------

// |z|^p with the half-integer cases done by sqrt instead of pow
inline double abs_pow(cplx z, double p) {
    const double a2 = std::norm(z);
    if (p == 2.0) return a2;
    const double a = std::sqrt(a2);
    if (p == 1.0) return a;
    if (p == 3.0) return a2 * a;
    if (p == 1.5) return a * std::sqrt(a);
    return std::pow(a, p);
}

// Int_{RxT} |f|^p: trapezoid on the periodic x-window (equal to the plain
// rectangle sum, since x = L wraps to x = -L), exact mean in gamma.  Test
// data either decays inside the window or is grid-periodic, so this is the
// right quadrature in both regimes.
inline double lp_mass(const SampledField& f, double p) {
    const int nx = f.grid.nx;
    const int ng = f.grid.ngamma();
    double acc = 0.0;
    for (int n = 0; n < ng; ++n) {
        const cplx* row = f.values.data() + std::size_t(n) * nx;
        double s = 0.0;
        for (int m = 0; m < nx; ++m) s += abs_pow(row[m], p);
        acc += s;
    }
    return acc * f.grid.dx() / ng;
}

inline double lp_norm(const SampledField& f, double p) {
    return std::pow(lp_mass(f, p), 1.0 / p);
}

inline double l2_norm(const SampledField& f) { return lp_norm(f, 2.0); }

// L2(RxT) inner product <f, g>, same quadrature as lp_mass
inline cplx l2_inner(const SampledField& f, const SampledField& g) {
    if (f.grid != g.grid) throw grid_mismatch("l2_inner: fields on different grids");
    const int nx = f.grid.nx;
    const int ng = f.grid.ngamma();
    cplx acc(0.0, 0.0);
    for (int n = 0; n < ng; ++n) {
        const cplx* a = f.values.data() + std::size_t(n) * nx;
        const cplx* b = g.values.data() + std::size_t(n) * nx;
        cplx s(0.0, 0.0);
        for (int m = 0; m < nx; ++m) s += a[m] * std::conj(b[m]);
        acc += s;
    }
    return acc * (f.grid.dx() / ng);
}

} // namespace wormhardy
