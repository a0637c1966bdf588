#pragma once

#include <array>
#include <span>
#include <utility>
#include <vector>

#include "srf/helix.hpp"
#include "srf/types.hpp"

namespace srf {

// Terminal indices run 0..n-1, Steiner indices 1..n-2.
struct VertexRef {
    PointKind kind{PointKind::terminal};
    int index{};

    bool operator==(const VertexRef&) const = default;
};

// Path of Steiner points S_1..S_{n-2}; S_1 absorbs T_0 and T_1, S_{n-2}
// absorbs T_{n-2} and T_{n-1}, interior S_k picks up T_k. Every Steiner
// vertex has degree 3, every terminal degree 1, 2n-3 edges in total.
struct SausageTopology {
    int n{};
    std::vector<std::pair<VertexRef, VertexRef>> edges;

    int steiner_count() const { return n - 2; }
    // Neighbour table indexed by k-1 for S_k.
    std::vector<std::array<VertexRef, 3>> steiner_adjacency() const;
};

SausageTopology build_sausage_topology(int n);

double tree_length(std::span<const Point3> terminals, std::span<const Point3> steiner,
                   const SausageTopology& topo);

// Exact Euclidean minimum spanning tree length (Prim on the complete graph).
double mst_length(std::span<const Point3> points);

// Pairwise angles (degrees) between the three edge directions at a Steiner
// vertex, ordered (0,1), (0,2), (1,2).
std::array<double, 3> angles_at_steiner(const Point3& center,
                                        const std::array<Point3, 3>& neighbors);

struct RelaxResult {
    std::vector<Point3> positions;
    double length{};
    long sweeps{};
    std::vector<std::pair<VertexRef, VertexRef>> degenerate_edges;  // < 1e-9
    long monotonicity_violations{};  // sweeps where the length rose beyond 1e-13
};

// Fixed-topology Fermat-point relaxation: one Weiszfeld update per Steiner
// vertex per sweep, in order S_1..S_{n-2}, until the total length decreases by
// less than tol per sweep. Total length is non-increasing across sweeps.
// Updates within 1e-12 of a neighbour are skipped (fixed-point singularity);
// edges collapsed below 1e-9 are reported, not contracted.
RelaxResult optimize_steiner_points(std::span<const Point3> terminals,
                                    const SausageTopology& topo,
                                    std::span<const Point3> init, double tol,
                                    long sweep_budget = 100000);

struct OracleReport {
    int n{};
    HelixParams params{};
    double mst_length{};
    double steiner_length{};
    double ratio{};
    // Worst deviation from 120 degrees at interior Steiner points of the
    // unoptimized ansatz tree.
    double max_angle_error_deg{};
    long iterations{};
    std::vector<std::pair<VertexRef, VertexRef>> degenerate_edges;
    std::vector<Point3> optimized_steiner;  // relaxed positions, S_1..S_{n-2}
};

// Finite-n ratio: relaxed sausage tree over helix terminals vs. their exact
// MST. Requires n >= 3, alpha > 0 and A_1(omega) > 0.
OracleReport steiner_ratio_finite(int n, const HelixParams& p, double tol = 1e-10,
                                  long sweep_budget = 100000);

}  // namespace srf
