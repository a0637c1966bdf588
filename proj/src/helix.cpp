#include "srf/helix.hpp"

#include <cmath>
#include <string>

#include "srf/analytic.hpp"
#include "srf/errors.hpp"

namespace srf {

namespace {

void check_helix_params(const HelixParams& p) {
    if (!std::isfinite(p.omega) || !std::isfinite(p.alpha))
        throw DomainError("helix params must be finite");
    if (p.omega <= 0.0 || p.omega >= kTwoPi)
        throw DomainError("omega must lie in (0, 2*pi), got " + std::to_string(p.omega));
    if (p.alpha < 0.0)
        throw DomainError("alpha must be >= 0, got " + std::to_string(p.alpha));
}

}  // namespace

int SubsequenceSpec::l_max() const {
    const int offset = (kind == PointKind::terminal) ? 1 : 2;
    const int span = n - start - offset;
    // span >= 0 is checked by validate(); plain division is floor here.
    return span / skip;
}

void SubsequenceSpec::validate() const {
    if (skip < 1) throw SpecError("skip count m must be >= 1");
    if (n < 1) throw SpecError("point count n must be >= 1");
    if (start < 0) throw SpecError("subsequence start must be >= 0");
    if (kind == PointKind::terminal) {
        if (start > skip - 1) throw SpecError("terminal start must satisfy start <= m-1");
        if (start > n - 1) throw SpecError("terminal start exceeds last index n-1");
    } else {
        // Steiner indices run 1..n-2. start = m is admitted as the residue-0
        // representative (S_0 does not exist), so the classes partition 1..n-2.
        if (start > skip) throw SpecError("steiner start must satisfy start <= m");
        if (n - start - 2 < 0) throw SpecError("steiner start exceeds last index n-2");
    }
}

Point3 terminal_point(int j, const HelixParams& p) {
    if (j < 0) throw SpecError("terminal index j must be >= 0");
    check_helix_params(p);
    const double a = static_cast<double>(j) * p.omega;
    return {std::cos(a), std::sin(a), p.alpha * a};
}

Point3 steiner_point_ansatz(int k, const HelixParams& p, int m) {
    if (k < 0) throw SpecError("steiner index k must be >= 0");
    check_helix_params(p);
    if (p.alpha <= 0.0) throw DomainError("steiner ansatz requires alpha > 0");
    const double r = radius(m, p);  // throws DomainError when A_m <= 0
    const double a = static_cast<double>(k) * p.omega;
    return {r * std::cos(a), r * std::sin(a), p.alpha * a};
}

std::vector<int> subsequence_indices(const SubsequenceSpec& spec) {
    spec.validate();
    const int lmax = spec.l_max();
    std::vector<int> out;
    out.reserve(static_cast<std::size_t>(lmax) + 1);
    for (int l = 0; l <= lmax; ++l) out.push_back(spec.start + l * spec.skip);
    return out;
}

double recover_angle(const Point3& s, double alpha) {
    if (!(alpha > 0.0)) throw DomainError("recover_angle requires alpha > 0");
    if (s.x == 0.0 && s.y == 0.0)
        throw DomainError("recover_angle undefined on the helix axis (x = y = 0)");
    double base = std::atan2(s.y, s.x);  // (-pi, pi]
    if (base < 0.0) base += kTwoPi;      // [0, 2*pi)
    const double turns = std::floor(s.z / (kTwoPi * alpha));
    return base + kTwoPi * turns;
}

}  // namespace srf
