#include "srf/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "srf/analytic.hpp"
#include "srf/errors.hpp"

namespace srf {

namespace {

constexpr double kDegenerateEdge = 1e-9;
constexpr double kWeiszfeldGuard = 1e-12;
constexpr double kRadToDeg = 180.0 / kPi;

const Point3& position_of(const VertexRef& v, std::span<const Point3> terminals,
                          std::span<const Point3> steiner) {
    if (v.kind == PointKind::terminal) return terminals[static_cast<std::size_t>(v.index)];
    return steiner[static_cast<std::size_t>(v.index - 1)];
}

}  // namespace

std::vector<std::array<VertexRef, 3>> SausageTopology::steiner_adjacency() const {
    std::vector<std::array<VertexRef, 3>> adj(static_cast<std::size_t>(steiner_count()));
    std::vector<int> degree(static_cast<std::size_t>(steiner_count()), 0);
    auto add = [&](const VertexRef& s, const VertexRef& other) {
        auto& slot = adj[static_cast<std::size_t>(s.index - 1)];
        slot[static_cast<std::size_t>(degree[static_cast<std::size_t>(s.index - 1)]++)] =
            other;
    };
    for (const auto& [a, b] : edges) {
        if (a.kind == PointKind::steiner) add(a, b);
        if (b.kind == PointKind::steiner) add(b, a);
    }
    return adj;
}

SausageTopology build_sausage_topology(int n) {
    if (n < 3) throw SpecError("sausage topology requires n >= 3 terminals");
    SausageTopology topo;
    topo.n = n;
    auto T = [](int j) { return VertexRef{PointKind::terminal, j}; };
    auto S = [](int k) { return VertexRef{PointKind::steiner, k}; };

    if (n == 3) {
        topo.edges = {{S(1), T(0)}, {S(1), T(1)}, {S(1), T(2)}};
        return topo;
    }
    topo.edges.reserve(static_cast<std::size_t>(2 * n - 3));
    topo.edges.push_back({S(1), T(0)});
    topo.edges.push_back({S(1), T(1)});
    for (int k = 2; k <= n - 3; ++k) topo.edges.push_back({S(k), T(k)});
    topo.edges.push_back({S(n - 2), T(n - 2)});
    topo.edges.push_back({S(n - 2), T(n - 1)});
    for (int k = 1; k <= n - 3; ++k) topo.edges.push_back({S(k), S(k + 1)});
    return topo;
}

double tree_length(std::span<const Point3> terminals, std::span<const Point3> steiner,
                   const SausageTopology& topo) {
    if (static_cast<int>(terminals.size()) != topo.n)
        throw SpecError("terminal count does not match topology");
    if (static_cast<int>(steiner.size()) != topo.steiner_count())
        throw SpecError("steiner count does not match topology");
    double total = 0.0;
    for (const auto& [a, b] : topo.edges)
        total += distance(position_of(a, terminals, steiner),
                          position_of(b, terminals, steiner));
    return total;
}

double mst_length(std::span<const Point3> points) {
    const std::size_t n = points.size();
    if (n < 2) throw SpecError("mst requires at least 2 points");
    std::vector<double> best(n, std::numeric_limits<double>::infinity());
    std::vector<bool> used(n, false);
    best[0] = 0.0;
    double total = 0.0;
    for (std::size_t step = 0; step < n; ++step) {
        std::size_t pick = n;
        for (std::size_t i = 0; i < n; ++i)
            if (!used[i] && (pick == n || best[i] < best[pick])) pick = i;
        used[pick] = true;
        total += best[pick];
        for (std::size_t i = 0; i < n; ++i) {
            if (used[i]) continue;
            best[i] = std::min(best[i], distance(points[pick], points[i]));
        }
    }
    return total;
}

std::array<double, 3> angles_at_steiner(const Point3& center,
                                        const std::array<Point3, 3>& neighbors) {
    std::array<Point3, 3> dir;
    std::array<double, 3> len;
    for (int i = 0; i < 3; ++i) {
        dir[static_cast<std::size_t>(i)] = neighbors[static_cast<std::size_t>(i)] - center;
        len[static_cast<std::size_t>(i)] = dir[static_cast<std::size_t>(i)].norm();
        if (len[static_cast<std::size_t>(i)] == 0.0)
            throw DegenerateError("zero-length edge at steiner vertex");
    }
    auto angle = [&](int i, int j) {
        const double c = dir[static_cast<std::size_t>(i)].dot(dir[static_cast<std::size_t>(j)]) /
                         (len[static_cast<std::size_t>(i)] * len[static_cast<std::size_t>(j)]);
        return std::acos(std::clamp(c, -1.0, 1.0)) * kRadToDeg;
    };
    return {angle(0, 1), angle(0, 2), angle(1, 2)};
}

RelaxResult optimize_steiner_points(std::span<const Point3> terminals,
                                    const SausageTopology& topo,
                                    std::span<const Point3> init, double tol,
                                    long sweep_budget) {
    if (!(tol > 0.0)) throw SpecError("relaxation tolerance must be > 0");
    if (static_cast<int>(init.size()) != topo.steiner_count())
        throw SpecError("init count does not match topology");
    for (const Point3& p : init)
        if (!std::isfinite(p.x) || !std::isfinite(p.y) || !std::isfinite(p.z))
            throw SpecError("init positions must be finite");

    RelaxResult res;
    res.positions.assign(init.begin(), init.end());
    const auto adjacency = topo.steiner_adjacency();

    double prev = tree_length(terminals, res.positions, topo);
    bool converged = false;
    for (long sweep = 1; sweep <= sweep_budget; ++sweep) {
        for (int k = 1; k <= topo.steiner_count(); ++k) {
            const auto& nb = adjacency[static_cast<std::size_t>(k - 1)];
            const Point3 s = res.positions[static_cast<std::size_t>(k - 1)];
            double wsum = 0.0;
            Point3 acc{};
            bool singular = false;
            for (const VertexRef& v : nb) {
                const Point3& q = position_of(v, terminals, res.positions);
                const double d = distance(s, q);
                if (d < kWeiszfeldGuard) {
                    singular = true;
                    break;
                }
                const double w = 1.0 / d;
                wsum += w;
                acc = acc + q * w;
            }
            if (singular) continue;
            res.positions[static_cast<std::size_t>(k - 1)] = acc * (1.0 / wsum);
        }
        const double cur = tree_length(terminals, res.positions, topo);
        res.sweeps = sweep;
        if (cur > prev + 1e-13) ++res.monotonicity_violations;
        if (prev - cur < tol) {
            res.length = cur;
            converged = true;
            break;
        }
        prev = cur;
    }
    if (!converged)
        throw NonConvergenceError("fermat relaxation exhausted sweep budget (" +
                                  std::to_string(sweep_budget) + " sweeps)");

    for (const auto& e : topo.edges) {
        const double d = distance(position_of(e.first, terminals, res.positions),
                                  position_of(e.second, terminals, res.positions));
        if (d < kDegenerateEdge) res.degenerate_edges.push_back(e);
    }
    return res;
}

OracleReport steiner_ratio_finite(int n, const HelixParams& p, double tol,
                                  long sweep_budget) {
    if (n < 3) throw SpecError("oracle requires n >= 3");
    if (!(p.alpha > 0.0)) throw DomainError("oracle requires alpha > 0");
    if (a_coefficient(1, p.omega) <= 0.0)
        throw DomainError("oracle requires A_1(omega) > 0 (numerator domain)");

    std::vector<Point3> terminals;
    terminals.reserve(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) terminals.push_back(terminal_point(j, p));

    const SausageTopology topo = build_sausage_topology(n);
    std::vector<Point3> ansatz;
    ansatz.reserve(static_cast<std::size_t>(n - 2));
    for (int k = 1; k <= n - 2; ++k) ansatz.push_back(steiner_point_ansatz(k, p, 1));

    // 120-degree validation on the unoptimized ansatz, interior vertices only
    // (S_1 and S_{n-2} carry two terminals and are not in helical equilibrium).
    OracleReport rep;
    rep.max_angle_error_deg = 0.0;
    const auto adjacency = topo.steiner_adjacency();
    for (int k = 2; k <= n - 3; ++k) {
        const auto& nb = adjacency[static_cast<std::size_t>(k - 1)];
        std::array<Point3, 3> nbpos;
        for (int i = 0; i < 3; ++i)
            nbpos[static_cast<std::size_t>(i)] =
                position_of(nb[static_cast<std::size_t>(i)], terminals, ansatz);
        const auto angles =
            angles_at_steiner(ansatz[static_cast<std::size_t>(k - 1)], nbpos);
        for (double a : angles)
            rep.max_angle_error_deg = std::max(rep.max_angle_error_deg, std::abs(a - 120.0));
    }

    const RelaxResult relax =
        optimize_steiner_points(terminals, topo, ansatz, tol, sweep_budget);

    rep.n = n;
    rep.params = p;
    rep.mst_length = mst_length(terminals);
    rep.steiner_length = relax.length;
    rep.ratio = relax.length / rep.mst_length;
    rep.iterations = relax.sweeps;
    rep.degenerate_edges = relax.degenerate_edges;
    rep.optimized_steiner = relax.positions;
    return rep;
}

}  // namespace srf
