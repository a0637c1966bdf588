#include "srf/analytic.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "srf/errors.hpp"

namespace srf {

namespace {

void check_analytic_params(const HelixParams& p) {
    if (!std::isfinite(p.omega) || !std::isfinite(p.alpha))
        throw DomainError("helix params must be finite");
    if (p.omega <= 0.0) throw DomainError("omega must be > 0");
    if (p.alpha < 0.0) throw DomainError("alpha must be >= 0");
}

void check_skip(int m) {
    if (m < 1) throw DomainError("skip count m must be >= 1");
}

}  // namespace

double a_coefficient(int m, double omega) {
    check_skip(m);
    if (!std::isfinite(omega)) throw DomainError("omega must be finite");
    return 1.0 - 2.0 * std::cos(static_cast<double>(m) * omega);
}

double radius(int m, const HelixParams& p) {
    check_analytic_params(p);
    const double am = a_coefficient(m, p.omega);
    if (am <= 0.0)
        throw DomainError("steiner radius undefined: A_" + std::to_string(m) +
                          " = " + std::to_string(am) + " <= 0");
    const double u = static_cast<double>(m) * p.alpha * p.omega;
    return u / std::sqrt(am * (1.0 + am));
}

double cos_theta(int m, const HelixParams& p) {
    check_analytic_params(p);
    const double am = a_coefficient(m, p.omega);
    const double u = static_cast<double>(m) * p.alpha * p.omega;
    const double denom = u * u + 1.0 + am;
    if (denom == 0.0)
        throw DegenerateError("cos_theta undefined: coincident points at m = " +
                              std::to_string(m));
    return -1.0 + (1.0 + am) * (1.0 + am) / (2.0 * denom);
}

double step_distance(int m, const HelixParams& p) {
    check_analytic_params(p);
    const double mw = static_cast<double>(m) * p.omega;
    const double u = static_cast<double>(m) * p.alpha * p.omega;
    // 2 - 2*cos(m*omega) = 1 + A_m, clamped at 0 against rounding.
    const double chord = std::max(0.0, 2.0 - 2.0 * std::cos(mw));
    return std::sqrt(u * u + chord);
}

double steiner_length_density(int m, const HelixParams& p) {
    check_analytic_params(p);
    double am = a_coefficient(m, p.omega);
    // The density is continuous at A_m -> 0+ (limit 1); absorb rounding noise
    // of cos at the boundary instead of rejecting it.
    if (am < 0.0 && am > -1e-15) am = 0.0;
    if (am < 0.0)
        throw DomainError("steiner length density undefined: A_" + std::to_string(m) +
                          " = " + std::to_string(am) + " < 0");
    const double u = static_cast<double>(m) * p.alpha * p.omega;
    return 1.0 + u * std::sqrt(am / (1.0 + am));
}

namespace {

double srf_numerator(const HelixParams& p) {
    const double a1 = a_coefficient(1, p.omega);
    if (a1 <= 0.0)
        throw DomainError("outside numerator domain: A_1 = " + std::to_string(a1) +
                          " <= 0 (need omega in (pi/3, 5*pi/3) mod 2*pi)");
    return steiner_length_density(1, p);
}

}  // namespace

double rho_surface(int m, const HelixParams& p) {
    const double num = srf_numerator(p);
    const double dm = step_distance(m, p);
    if (dm == 0.0) return std::numeric_limits<double>::infinity();
    return num / dm;
}

SurfaceSample surface_sample(int m, const HelixParams& p) {
    SurfaceSample s;
    s.params = p;
    s.m = m;
    s.a_m = a_coefficient(m, p.omega);
    s.d_m = step_distance(m, p);
    s.rho_m = rho_surface(m, p);
    s.density_st = (s.a_m >= 0.0) ? steiner_length_density(m, p)
                                  : std::numeric_limits<double>::quiet_NaN();
    s.cos_theta = cos_theta(m, p);
    return s;
}

SrfValue steiner_ratio(const HelixParams& p, int m_max, SrfVariant variant) {
    if (m_max < 3) throw DomainError("srf requires m_max >= 3");
    double num = srf_numerator(p);

    if (variant == SrfVariant::min_numerator) {
        for (int m = 2; m <= m_max; ++m) {
            if (a_coefficient(m, p.omega) < 0.0) continue;
            num = std::min(num, steiner_length_density(m, p));
        }
    }

    double d_min = std::numeric_limits<double>::infinity();
    int argmin = 0;
    for (int m = 1; m <= m_max; ++m) {
        const double dm = step_distance(m, p);
        if (dm == 0.0) continue;  // coincident skip class cannot span
        if (dm < d_min) {
            d_min = dm;
            argmin = m;
        }
    }
    // m = 1 always has d_1 > 0 for omega in (0, 2*pi); argmin is set.

    SrfValue v;
    v.rho = num / d_min;
    v.argmin_m = argmin;
    for (int m = 1; m <= m_max; ++m) {
        const double dm = step_distance(m, p);
        if (dm > 0.0 && dm - d_min <= kSrfTieTol) v.tie.push_back(m);
    }
    v.truncation_suspect = (argmin == m_max);
    return v;
}

HelixParams symmetry_image(const HelixParams& p, int n_turns) {
    if (n_turns < 1) throw DomainError("symmetry image requires N >= 1");
    const double mirrored = kTwoPi * static_cast<double>(n_turns) - p.omega;
    if (mirrored <= 0.0)
        throw DomainError("symmetry image undefined: 2*pi*N <= omega");
    return {mirrored, p.omega * p.alpha / mirrored};
}

}  // namespace srf
