#pragma once

#include <vector>

#include "srf/analytic.hpp"
#include "srf/types.hpp"

namespace srf {

// The Graham-Hwang omega band [arccos(1/4), 2*pi - arccos(1/4)].
struct OmegaWindow {
    double lo{};
    double hi{};

    bool contains(double omega) const { return omega >= lo && omega <= hi; }
};

OmegaWindow omega_window();

inline constexpr double kGrahamHwangBound = 0.57735026918962576451;  // sqrt(3)/3

// All alpha > 0 with rho_m(omega, alpha) = 1, ascending. Zero, one (tangency)
// or two roots. Simple roots by bracketing + bisection on a 512-cell grid over
// (0, 10]; tangent roots at the vertex of the underlying quadratic in
// u = alpha*omega, where a sign change does not exist. Requires A_1(omega) > 0.
std::vector<double> unit_rho_curve(int m, double omega);

enum class RegionConstraint {
    none,
    omega_window,
    numerator_domain,
    rho1_hypograph,
    rhok_hypograph,   // failed_k names the surface
    rho_lower_bound,  // rho < sqrt(3)/3
};

struct RegionPredicateResult {
    bool inside{};
    RegionConstraint failed_constraint{RegionConstraint::none};
    int failed_k{0};  // set for rhok_hypograph
    double rho{};     // SRF value when evaluable, else NaN
};

// Pointwise membership in the compact search region: omega inside the window,
// on or below the rho_1 = 1 tangency curve (equivalently cos(theta_1) >= -1/2),
// no surface rho_k above 1, and sqrt(3)/3 <= rho(omega, alpha) <= 1.
RegionPredicateResult in_compact_region(const HelixParams& p, int m_max = kDefaultMMax);

// Full-tree constraint cos(theta_m) >= -1/2.
bool full_tree_feasible(int m, const HelixParams& p);

}  // namespace srf
