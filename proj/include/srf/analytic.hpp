#pragma once

#include <vector>

#include "srf/types.hpp"

namespace srf {

// A_m = 1 - 2*cos(m*omega). Range [-1, 3].
double a_coefficient(int m, double omega);

// Steiner helix radius r_m = m*alpha*omega / sqrt(A_m*(1+A_m)); the radius at
// which all three edge pairs of the skip-m sausage tree meet at 120 degrees.
// Requires A_m(omega) > 0.
double radius(int m, const HelixParams& p);

// Angle between consecutive terminal edges:
// cos(theta_m) = -1 + (1+A_m)^2 / (2*(m^2 alpha^2 omega^2 + 1 + A_m)).
double cos_theta(int m, const HelixParams& p);

// Euclidean distance between terminals m steps apart:
// d_m = sqrt(m^2 alpha^2 omega^2 + 2 - 2*cos(m*omega)). Total; zero only when
// alpha = 0 and m*omega is a multiple of 2*pi (coincident points).
double step_distance(int m, const HelixParams& p);

// Steiner tree length per terminal, 1 + m*alpha*omega*sqrt(A_m/(1+A_m)).
// Requires A_m >= 0.
double steiner_length_density(int m, const HelixParams& p);

// rho_m = steiner_length_density(1) / step_distance(m). Requires A_1 > 0;
// returns +inf where step_distance(m) is zero (degenerate skip class).
double rho_surface(int m, const HelixParams& p);

// Closed forms of one surface bundled for export and diagnostics.
struct SurfaceSample {
    HelixParams params{};
    int m{};
    double a_m{};
    double rho_m{};
    double d_m{};
    double density_st{};
    double cos_theta{};
};

SurfaceSample surface_sample(int m, const HelixParams& p);

struct SrfValue {
    double rho{};
    int argmin_m{};          // smallest m minimizing the denominator
    std::vector<int> tie{};  // all m within kSrfTieTol of the minimal denominator
    bool truncation_suspect{false};  // argmin_m == m_max: raise m_max
};

inline constexpr double kSrfTieTol = 1e-12;  // absolute, on the denominator
inline constexpr int kDefaultMMax = 16;

// Numerator choice: the canonical SRF fixes the numerator to the m=1 density
// (largest full-tree domain); the exploratory variant minimizes it over m.
enum class SrfVariant { shared_numerator, min_numerator };

// rho(omega, alpha) = density / min_m step_distance(m), m = 1..m_max.
// Degenerate classes (step_distance = 0) are skipped: a zero-length step
// cannot span distinct points. Requires A_1 > 0 and m_max >= 3.
SrfValue steiner_ratio(const HelixParams& p, int m_max = kDefaultMMax,
             SrfVariant variant = SrfVariant::shared_numerator);

// The rho-preserving pair (omega, alpha) -> (2*pi*N - omega, omega*alpha/(2*pi*N - omega)).
// Involution for fixed N; preserves alpha*omega and every cos(m*omega).
// For N >= 2 the image omega exceeds 2*pi; the closed forms still apply.
HelixParams symmetry_image(const HelixParams& p, int n_turns = 1);

}  // namespace srf
