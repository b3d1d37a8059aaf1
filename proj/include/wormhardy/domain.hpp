#pragma once

// Geometry of the non-smooth worm domain
//
//   D'_beta = { (z1, z2) : |Im z1 - log|z2|^2| < pi/2, |log|z2|^2| < beta - pi/2 },
//
// beta > pi/2.  Points are carried as (z1, s, gamma) with s = log|z2|^2 and
// z2 = e^{s/2} e^{2 pi i gamma}; every multiplier below depends on (s, gamma)
// only, and s avoids the overflow of raw |z2|^j powers.  The distinguished
// boundary has four components E1..E4, each a copy of R x T.

#include <array>
#include <cmath>
#include <complex>

#include "wormhardy/common.hpp"

namespace wormhardy {

struct DomainParams {
    double beta = 0.0;         // half-width parameter, beta > pi/2
    double half_strip = 0.0;   // beta - pi/2
    double weight_scale = 0.0; // 2 beta - pi
};

inline DomainParams validate_params(double beta) {
    if (!std::isfinite(beta)) throw beta_out_of_range("beta must be finite");
    if (!(beta > pi / 2)) throw beta_out_of_range("beta must exceed pi/2");
    DomainParams p;
    p.beta = beta;
    p.half_strip = beta - pi / 2;
    p.weight_scale = 2.0 * beta - pi;
    return p;
}

enum class BoundaryComponent : int { E1 = 0, E2 = 1, E3 = 2, E4 = 3 };

// Im z1 on component l: { beta, beta - pi, -beta, -(beta - pi) }.
inline double component_im_z1(const DomainParams& p, BoundaryComponent c) {
    switch (c) {
        case BoundaryComponent::E1: return p.beta;
        case BoundaryComponent::E2: return p.beta - pi;
        case BoundaryComponent::E3: return -p.beta;
        default: return -(p.beta - pi);
    }
}

// sign of log|z2|^2 on component l: +1 on E1, E2 and -1 on E3, E4.
inline double component_sign(BoundaryComponent c) {
    return (c == BoundaryComponent::E1 || c == BoundaryComponent::E2) ? 1.0 : -1.0;
}

// log|z2|^2 on component l: +-(beta - pi/2).
inline double component_s(const DomainParams& p, BoundaryComponent c) {
    return component_sign(c) * p.half_strip;
}

constexpr std::array<BoundaryComponent, 4> all_components = {
    BoundaryComponent::E1, BoundaryComponent::E2,
    BoundaryComponent::E3, BoundaryComponent::E4};

struct InteriorPoint {
    cplx z1;             // z1 = x + i y
    double s = 0.0;      // log|z2|^2
    double gamma = 0.0;  // z2 phase / 2 pi, in [0, 1)
};

struct BoundaryPoint {
    BoundaryComponent component = BoundaryComponent::E1;
    double x = 0.0;
    double gamma = 0.0;
};

// Approach parameters (t, s) -> (pi/2, beta - pi/2) of the growth functional.
struct ApproachParams {
    double t = 0.0; // in [0, pi/2)
    double s = 0.0; // in [0, beta - pi/2)
};

inline bool approach_in_range(const DomainParams& p, const ApproachParams& a) {
    return a.t >= 0.0 && a.t < pi / 2 && a.s >= 0.0 && a.s < p.half_strip;
}

// Membership test for the slice point (x + i y, e^{s/2} e^{2 pi i gamma}).
inline bool is_interior_ys(const DomainParams& p, double y, double s) {
    return std::abs(s) < p.half_strip && std::abs(y - s) < pi / 2;
}

enum class PointClass { Interior, Boundary, Exterior };

struct Classification {
    PointClass kind = PointClass::Exterior;
    BoundaryComponent component = BoundaryComponent::E1; // valid when kind == Boundary
};

// Grid points land on the boundary analytically; the tolerance only absorbs
// rounding in the caller's arithmetic.
inline constexpr double boundary_tol = 1e-12;

inline Classification classify_point(const DomainParams& p, cplx z1, double s, double /*gamma*/) {
    const double y = z1.imag();
    for (BoundaryComponent c : all_components) {
        if (std::abs(y - component_im_z1(p, c)) <= boundary_tol &&
            std::abs(s - component_s(p, c)) <= boundary_tol) {
            return {PointClass::Boundary, c};
        }
    }
    if (is_interior_ys(p, y, s)) return {PointClass::Interior, BoundaryComponent::E1};
    return {PointClass::Exterior, BoundaryComponent::E1};
}

// z2 reconstructed for display only.
inline cplx z2_from(double s, double gamma) {
    return std::exp(s / 2) * cplx(std::cos(2 * pi * gamma), std::sin(2 * pi * gamma));
}

inline cplx boundary_z1(const DomainParams& p, const BoundaryPoint& q) {
    return cplx(q.x, component_im_z1(p, q.component));
}

} // namespace wormhardy
