#pragma once

#include <cmath>

namespace srf {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

// Angular step omega (radians) and pitch parameter alpha; helix pitch = 2*pi*alpha.
// Canonical domain: omega in (0, 2*pi), alpha >= 0. Symmetry images may carry
// omega >= 2*pi; the closed-form evaluators accept any finite omega > 0.
struct HelixParams {
    double omega{};
    double alpha{};
};

struct Point3 {
    double x{};
    double y{};
    double z{};

    Point3 operator+(const Point3& o) const { return {x + o.x, y + o.y, z + o.z}; }
    Point3 operator-(const Point3& o) const { return {x - o.x, y - o.y, z - o.z}; }
    Point3 operator*(double s) const { return {x * s, y * s, z * s}; }

    double dot(const Point3& o) const { return x * o.x + y * o.y + z * o.z; }
    double norm() const { return std::sqrt(x * x + y * y + z * z); }
};

inline double distance(const Point3& a, const Point3& b) { return (a - b).norm(); }

}  // namespace srf
