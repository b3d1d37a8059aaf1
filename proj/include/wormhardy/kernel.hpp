#pragma once

// Mode kernels and the Szego kernel of the worm domain.  The j-th mode
// kernel, written in the difference variable delta = z1 - conj(z2), is
//
//   k_j(delta) = (1/8pi) Int e^{i delta xi} / ( ch(pi xi) ch[(2b - pi)(xi - j/2)] ) dxi
//
// and the full kernel against a distinguished-boundary point is the series
// sum_j w2^j conj(zeta2)^j k_j(w1, zeta1).  The |z2|^j powers are carried as
// exponents j s / 2 and folded into the quadrature integrand, so nothing is
// ever evaluated as a raw power.  Truncation is certified: the explicit
// three-piece majorant of each neglected term sums in closed form to a bound
// on the whole tail.

#include <cmath>
#include <complex>
#include <functional>
#include <vector>

#include "wormhardy/common.hpp"
#include "wormhardy/domain.hpp"
#include "wormhardy/quadrature.hpp"

namespace wormhardy {

namespace detail {

// e^{log_weight} * k_j(delta), with the weight inside the integrand so large
// mode weights never amplify quadrature error.  The log of the integrand
// magnitude is concave with asymptotic slopes -(2b +- Im delta), so a tight
// window follows from a linear solve against the peak at the kinks 0, j/2.
inline cplx kj_eval_scaled(const DomainParams& p, int j, cplx delta, double log_weight,
                           double abs_tol) {
    const double c2 = p.weight_scale; // 2 beta - pi
    const double jim = delta.imag();
    if (!(std::abs(jim) <= 2.0 * p.beta - 1e-3))
        throw decay_guard_violated("kj_eval: |Im delta| too close to 2 beta");

    const auto expo = [&](double xi) {
        return log_weight - jim * xi - log_cosh(pi * xi) - log_cosh(c2 * (xi - 0.5 * j));
    };
    const double r0 = std::max(0.0, 0.5 * j);
    const double l0 = std::min(0.0, 0.5 * j);
    const double peak = std::max(expo(0.0), expo(0.5 * j)) + 1.4; // kink slack
    const double rate_r = 2.0 * p.beta + jim;
    const double rate_l = 2.0 * p.beta - jim;
    constexpr double drop = 48.0; // e^{-48} ~ 1e-21 relative at the cut
    const double cut_r = std::max(r0 + 1e-3, r0 + (expo(r0) - peak + drop) / rate_r);
    const double cut_l = std::min(l0 - 1e-3, l0 - (expo(l0) - peak + drop) / rate_l);
    const double tol = std::min(abs_tol, std::max(1e-18, 1e-13 * std::exp(std::min(peak, 0.0))));

    const double re = delta.real();
    const auto f = [&](double xi) {
        const double mag = exp_or_zero(expo(xi));
        const double ph = re * xi;
        return mag * cplx(std::cos(ph), std::sin(ph));
    };
    return integrate(f, cut_l, cut_r, tol) / (8.0 * pi);
}

// Closed-form tails of geometric sums over m = |j| > J:
//   sum_{m > J} rho^m           and   sum_{m > J} m rho^m.
inline double geom_tail(double rho, int J) {
    return std::pow(rho, J + 1) / (1.0 - rho);
}
inline double geom_tail_linear(double rho, int J) {
    const double r = std::pow(rho, J + 1);
    return r * ((J + 1) - double(J) * rho) / ((1.0 - rho) * (1.0 - rho));
}

// Upper bound on  sum_{|j| > J} sup |z2^j conj(zeta2)^j k_j(z1, zeta1)|  for
// zeta on the given component and (Im z1, s) ranging over the rectangle
// [ylo, yhi] x [slo, shi].  Derived from |1/ch u| <= 2 e^{-|u|} and the
// three-piece split of the kernel integral at 0 and j/2; the middle piece is
// bounded with the mean value theorem, giving the m rho^m terms.
inline double kernel_tail_majorant(const DomainParams& p, BoundaryComponent comp, double ylo,
                                   double yhi, double slo, double shi, int J) {
    const double sg = component_sign(comp);
    const double v = component_im_z1(p, comp);
    const double h = p.half_strip;
    const double b = p.beta;

    const double q1 = slo + sg * h + pi - yhi - v; // negative j, outer-left piece
    const double q2 = slo + sg * h + 2.0 * b - pi; // negative j, outer-right piece
    const double p1 = 2.0 * b - pi - shi - sg * h; // positive j, outer-left piece
    const double p2 = pi + ylo + v - shi - sg * h; // positive j, outer-right piece
    const double ca = 2.0 * b - yhi - v;           // coefficient denominators
    const double cb = 2.0 * b + ylo + v;
    if (!(q1 > 0.0 && q2 > 0.0 && p1 > 0.0 && p2 > 0.0 && ca > 0.0 && cb > 0.0))
        throw box_not_compact("kernel_tail_bound: box touches the boundary");

    const auto ring = [&](double r1, double r2) {
        const double rho1 = std::exp(-0.5 * r1);
        const double rho2 = std::exp(-0.5 * r2);
        return geom_tail(rho1, J) / ca + 0.5 * geom_tail_linear(std::max(rho1, rho2), J) +
               geom_tail(rho2, J) / cb;
    };
    return (ring(q1, q2) + ring(p1, p2)) / (2.0 * pi);
}

} // namespace detail

// k_j(delta) by adaptive quadrature, absolute error ~ abs_tol.
inline cplx kj_eval(const DomainParams& p, int j, cplx delta, double abs_tol = 1e-13) {
    return detail::kj_eval_scaled(p, j, delta, 0.0, abs_tol);
}

// Certified bound on the series tail sum_{|j| > j_range} over the compact box
// { |Im z1| <= y_max, |log|z2|^2| <= s_max }, zeta on the given component.
inline double kernel_tail_bound(const DomainParams& p, double y_max, double s_max,
                                BoundaryComponent comp, int j_range) {
    if (!(y_max >= 0.0 && s_max >= 0.0))
        throw param_out_of_range("kernel_tail_bound: box extents must be nonnegative");
    return detail::kernel_tail_majorant(p, comp, -y_max, y_max, -s_max, s_max, j_range);
}

struct KernelSeriesResult {
    cplx value;
    int j_min = 0;
    int j_max = 0;
    double tail_bound = 0.0;
};

struct KernelTraceRow {
    int j;
    cplx kj;
    cplx partial_sum;
    double tail_bound;
};

// Szego kernel K[(w1, w2), (zeta1, zeta2)] summed symmetrically in j
// (ascending |j|, positive sign first) until the certified tail drops below
// tol.  An optional trace records one row per mode for diagnostics.
inline KernelSeriesResult szego_kernel(const DomainParams& p, const InteriorPoint& w,
                                       const BoundaryPoint& zeta, double tol,
                                       std::vector<KernelTraceRow>* trace = nullptr) {
    if (!(tol > 0.0)) throw param_out_of_range("szego_kernel: tol must be positive");
    const double yw = w.z1.imag();
    if (!is_interior_ys(p, yw, w.s)) throw not_interior("szego_kernel: w is not interior");

    const double v = component_im_z1(p, zeta.component);
    const double s_zeta = component_s(p, zeta.component);
    const cplx delta = cplx(w.z1.real() - zeta.x, yw + v);
    const double half_exponent = 0.5 * (w.s + s_zeta); // log weight per unit j
    const double dgamma = w.gamma - zeta.gamma;
    constexpr double term_tol = 1e-15;
    constexpr int j_budget = 10000;

    const auto term = [&](int j) {
        const cplx kj = detail::kj_eval_scaled(p, j, delta, j * half_exponent, term_tol);
        const double ph = 2.0 * pi * j * dgamma;
        return kj * cplx(std::cos(ph), std::sin(ph));
    };
    const auto point_tail = [&](int J) {
        return detail::kernel_tail_majorant(p, zeta.component, yw, yw, w.s, w.s, J);
    };
    const auto record = [&](int j, cplx partial, double bound) {
        if (!trace) return;
        trace->push_back({j, kj_eval(p, j, delta, term_tol), partial, bound});
    };

    cplx value = term(0);
    double bound = point_tail(0);
    record(0, value, bound);
    if (bound <= tol) return {value, 0, 0, bound};

    for (int J = 1; J <= j_budget; ++J) {
        const cplx tp = term(J);
        const cplx tm = term(-J);
        bound = point_tail(J);
        record(J, value + tp, bound);
        value += tp + tm;
        record(-J, value, bound);
        if (bound <= tol) return {value, -J, J, bound};
    }
    throw truncation_budget_exceeded("szego_kernel: j_range exceeded 10^4");
}

} // namespace wormhardy
