#pragma once

#include <vector>

#include "srf/types.hpp"

namespace srf {

enum class PointKind { terminal, steiner };

// Arithmetic subsequence start, start+skip, ..., start+l_max*skip over a helix
// point family of n terminals (indices 0..n-1) or n-2 Steiner points
// (indices 1..n-2). skip = m means m-1 points are skipped between entries.
struct SubsequenceSpec {
    int start{};
    int skip{1};
    int n{};
    PointKind kind{PointKind::terminal};

    // Greatest l with start + l*skip still a valid index of the family.
    int l_max() const;
    void validate() const;  // throws SpecError on violated bounds
};

// P_j = (cos(j*omega), sin(j*omega), alpha*j*omega) on the unit-radius helix.
Point3 terminal_point(int j, const HelixParams& p);

// Steiner point on the inner helix of radius r_m, same pitch and angular
// stations as the terminals: (r_m cos(k*omega), r_m sin(k*omega), alpha*k*omega).
// Requires A_m(omega) > 0 and alpha > 0.
Point3 steiner_point_ansatz(int k, const HelixParams& p, int m = 1);

std::vector<int> subsequence_indices(const SubsequenceSpec& spec);

// Inverse of the helical placement: angular coordinate of a point on a helix
// of pitch 2*pi*alpha, turn count restored from z. Equivalent to the
// quadrant-corrected arctangent table: atan2 normalized to [0, 2*pi) plus
// 2*pi*floor(z / (2*pi*alpha)).
double recover_angle(const Point3& s, double alpha);

}  // namespace srf
