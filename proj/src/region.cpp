#include "srf/region.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "srf/errors.hpp"

namespace srf {

namespace {

constexpr int kBracketCells = 512;
constexpr double kAlphaMax = 10.0;
constexpr double kBisectTolAlpha = 1e-12;
constexpr double kRootValueTol = 1e-10;  // acceptance band on |rho - 1|

double rho_minus_one(int m, double omega, double alpha) {
    const double r = rho_surface(m, {omega, alpha});
    return r - 1.0;  // +inf propagates with the right sign
}

double bisect_root(int m, double omega, double lo, double hi, double flo) {
    // flo < 0 < f(hi) or flo > 0 > f(hi); keep the sign convention of lo.
    for (int it = 0; it < 200 && hi - lo > kBisectTolAlpha; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double fm = rho_minus_one(m, omega, mid);
        if (fm == 0.0) return mid;
        if ((fm < 0.0) == (flo < 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace

OmegaWindow omega_window() {
    const double lo = std::acos(0.25);
    return {lo, kTwoPi - lo};
}

std::vector<double> unit_rho_curve(int m, double omega) {
    if (m < 1) throw DomainError("skip count m must be >= 1");
    const double a1 = a_coefficient(1, omega);
    if (a1 <= 0.0)
        throw DomainError("unit rho curve undefined outside the numerator domain (A_1 <= 0)");

    std::vector<double> roots;
    const double h = kAlphaMax / kBracketCells;
    double prev_alpha = 0.0;
    double prev_f = rho_minus_one(m, omega, 0.0);
    for (int i = 1; i <= kBracketCells; ++i) {
        const double alpha = h * static_cast<double>(i);
        const double f = rho_minus_one(m, omega, alpha);
        if (f == 0.0) {
            roots.push_back(alpha);
        } else if ((prev_f < 0.0 && f > 0.0) || (prev_f > 0.0 && f < 0.0)) {
            roots.push_back(bisect_root(m, omega, prev_alpha, alpha, prev_f));
        }
        prev_alpha = alpha;
        prev_f = f;
    }

    // rho_m = 1 reduces to a concave quadratic in u = alpha*omega:
    // (q^2 - m^2) u^2 + 2 q u - A_m = 0 with q = sqrt(A_1/(1+A_1)).
    // A double root sits at the vertex u* = q / (m^2 - q^2) and produces no
    // sign change, so it is probed directly. For m = 1 the discriminant is
    // identically zero: the whole rho_1 = 1 curve is a tangency.
    const double q = std::sqrt(a1 / (1.0 + a1));
    const double u_star = q / (static_cast<double>(m) * m - q * q);
    const double alpha_star = u_star / omega;
    if (alpha_star > 0.0 && alpha_star <= kAlphaMax) {
        const double f_star = rho_minus_one(m, omega, alpha_star);
        if (std::abs(f_star) <= kRootValueTol) {
            roots.push_back(alpha_star);
        } else if (f_star > 0.0) {
            // Two simple roots inside one bracketing cell: split at the vertex.
            const int cell = std::min(kBracketCells - 1,
                                      static_cast<int>(alpha_star / h));
            const double lo = h * static_cast<double>(cell);
            const double hi = h * static_cast<double>(cell + 1);
            if (rho_minus_one(m, omega, lo) < 0.0 && rho_minus_one(m, omega, hi) < 0.0) {
                roots.push_back(bisect_root(m, omega, lo, alpha_star,
                                            rho_minus_one(m, omega, lo)));
                roots.push_back(bisect_root(m, omega, alpha_star, hi, f_star));
            }
        }
    }

    std::sort(roots.begin(), roots.end());
    std::vector<double> unique;
    for (double r : roots) {
        if (unique.empty() || r - unique.back() > 1e-9 * (1.0 + r)) unique.push_back(r);
    }
    return unique;
}

RegionPredicateResult in_compact_region(const HelixParams& p, int m_max) {
    if (m_max < 5) throw DomainError("region predicate requires m_max >= 5");
    RegionPredicateResult res;
    res.rho = std::numeric_limits<double>::quiet_NaN();

    const OmegaWindow w = omega_window();
    if (!w.contains(p.omega)) {
        res.failed_constraint = RegionConstraint::omega_window;
        return res;
    }
    if (a_coefficient(1, p.omega) <= 0.0) {
        // Unreachable for omega inside the window; kept for the contract.
        res.failed_constraint = RegionConstraint::numerator_domain;
        return res;
    }

    res.rho = steiner_ratio(p, m_max).rho;
    // H(rho_1) is the set on or below the rho_1 = 1 curve. The sublevel test
    // "rho_1 <= 1" is vacuous: the quadratic behind rho_1 = 1 has identically
    // zero discriminant, so the surface touches 1 from below and never
    // exceeds it. On or below the tangency curve means
    // alpha*omega <= sqrt(A_1 (1+A_1)), which is exactly the full-tree bound
    // cos(theta_1) >= -1/2.
    if (!full_tree_feasible(1, p)) {
        res.failed_constraint = RegionConstraint::rho1_hypograph;
        return res;
    }
    for (int k = 2; k <= m_max; ++k) {
        if (rho_surface(k, p) > 1.0) {
            res.failed_constraint = RegionConstraint::rhok_hypograph;
            res.failed_k = k;
            return res;
        }
    }
    if (res.rho < kGrahamHwangBound) {
        res.failed_constraint = RegionConstraint::rho_lower_bound;
        return res;
    }
    res.inside = true;
    return res;
}

bool full_tree_feasible(int m, const HelixParams& p) {
    return cos_theta(m, p) >= -0.5;
}

}  // namespace srf
