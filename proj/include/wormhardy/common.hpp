#pragma once

// Shared basics: error types, overflow-safe exponential helpers, a
// deterministic Gaussian RNG and a small thread pool helper.

#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <mutex>
#include <random>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace wormhardy {

using cplx = std::complex<double>;

inline constexpr double pi = 3.14159265358979323846264338327950288;

// ---------------------------------------------------------------------------
// Errors
// ---------------------------------------------------------------------------

struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct beta_out_of_range : error { using error::error; };
struct not_interior : error { using error::error; };
struct symbol_overflow : error { using error::error; };
struct non_finite : error { using error::error; };
struct tail_not_decayed : error { using error::error; };
struct quadrature_no_convergence : error { using error::error; };
struct eps_out_of_range : error { using error::error; };
struct decay_guard_violated : error { using error::error; };
struct box_not_compact : error { using error::error; };
struct truncation_budget_exceeded : error { using error::error; };
struct param_out_of_range : error { using error::error; };
struct mode_out_of_grid : error { using error::error; };
struct pw_condition_violated : error { using error::error; };
struct grid_mismatch : error { using error::error; };
struct p_out_of_range : error { using error::error; };
struct weight_divergence : error { using error::error; };
struct io_error : error { using error::error; };

// ---------------------------------------------------------------------------
// Overflow-safe exponentials
// ---------------------------------------------------------------------------

// log(cosh u), valid for all u without overflow:
//   log ch u = |u| - log 2 + log(1 + e^{-2|u|}).
inline double log_cosh(double u) {
    const double a = std::abs(u);
    return a - 0.6931471805599453094172321214581766 + std::log1p(std::exp(-2.0 * a));
}

// exp(e) flushed to zero below the subnormal range instead of raising.
inline double exp_or_zero(double e) {
    if (e < -745.0) return 0.0;
    return std::exp(e);
}

// exp(e) * v computed through log|v| so that a huge weight times a tiny
// value never trips intermediate overflow.  v == 0 short-circuits to 0.
inline cplx scaled_mul(double e, cplx v) {
    const double m = std::abs(v);
    if (m == 0.0) return cplx(0.0, 0.0);
    const double s = e + std::log(m);
    if (s > 709.0) throw symbol_overflow("scaled_mul: exponent overflow");
    if (s < -745.0) return cplx(0.0, 0.0);
    return (v / m) * std::exp(s);
}

// ---------------------------------------------------------------------------
// Deterministic random numbers
// ---------------------------------------------------------------------------

// Trial streams are derived from (seed, stream) with a fixed mix so results
// do not depend on thread scheduling or platform.
class gaussian_rng {
public:
    explicit gaussian_rng(std::uint64_t seed, std::uint64_t stream = 0)
        : eng_(seed ^ (0x9E3779B97F4A7C15ull * (stream + 1))) {}

    // standard normal via Box-Muller (mt19937_64 and this construction are
    // fully specified, unlike std::normal_distribution)
    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = uniform();
        if (u1 <= 0.0) u1 = 0x1p-53;
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        spare_ = r * std::sin(2.0 * pi * u2);
        have_spare_ = true;
        return r * std::cos(2.0 * pi * u2);
    }

    // complex standard normal, E|z|^2 = 1
    cplx cnormal() {
        const double re = normal();
        const double im = normal();
        return cplx(re, im) * 0.7071067811865475244008443621048490;
    }

    double uniform() { return double(eng_() >> 11) * 0x1p-53; }

private:
    std::mt19937_64 eng_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

// ---------------------------------------------------------------------------
// Parallel loop
// ---------------------------------------------------------------------------

inline unsigned thread_count() {
    static const unsigned n = [] {
        if (const char* env = std::getenv("WORM_THREADS")) {
            const long v = std::strtol(env, nullptr, 10);
            if (v >= 1) return unsigned(v);
        }
        const unsigned hw = std::thread::hardware_concurrency();
        return hw > 0 ? hw : 1u;
    }();
    return n;
}

// Static partition of [0, n).  Worker i handles a contiguous block, so any
// per-index output written into preallocated storage is deterministic.
inline void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body) {
    const unsigned nt = thread_count();
    if (nt <= 1 || n <= 1) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    const unsigned workers = unsigned(std::min<std::size_t>(nt, n));
    std::vector<std::thread> pool;
    pool.reserve(workers);
    std::exception_ptr first_error;
    std::mutex err_mutex;
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            const std::size_t lo = n * w / workers;
            const std::size_t hi = n * (w + 1) / workers;
            try {
                for (std::size_t i = lo; i < hi; ++i) body(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(err_mutex);
                if (!first_error) first_error = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
}

} // namespace wormhardy
