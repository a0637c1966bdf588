#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <map>
#include <random>
#include <set>

#include "srf/analytic.hpp"
#include "srf/errors.hpp"
#include "srf/oracle.hpp"
#include "sampling.hpp"

using namespace srf;

namespace {
const double kOmegaR = kPi - std::acos(2.0 / 3.0);
const double kAlphaR = std::sqrt(30.0) / (9.0 * kOmegaR);
const HelixParams kConjecture{kOmegaR, kAlphaR};
const double kRhoR = (3.0 * std::sqrt(3.0) + std::sqrt(7.0)) / 10.0;

std::string edge_key(const VertexRef& a, const VertexRef& b) {
    auto label = [](const VertexRef& v) {
        return (v.kind == PointKind::terminal ? "T" : "S") + std::to_string(v.index);
    };
    const std::string x = label(a), y = label(b);
    return x < y ? x + "-" + y : y + "-" + x;
}
}  // namespace

TEST_CASE("sausage topology structure") {
    SUBCASE("n = 3 is the fermat configuration") {
        const SausageTopology t = build_sausage_topology(3);
        CHECK(t.steiner_count() == 1);
        CHECK(t.edges.size() == 3);
    }
    SUBCASE("n = 4 matches the expected edge set") {
        const SausageTopology t = build_sausage_topology(4);
        std::set<std::string> got;
        for (const auto& [a, b] : t.edges) got.insert(edge_key(a, b));
        CHECK(got == std::set<std::string>{"S1-T0", "S1-T1", "S1-S2", "S2-T2", "S2-T3"});
    }
    SUBCASE("degree constraints at n = 10") {
        const SausageTopology t = build_sausage_topology(10);
        CHECK(t.edges.size() == 17);
        CHECK(t.steiner_count() == 8);
        std::map<std::string, int> degree;
        auto label = [](const VertexRef& v) {
            return (v.kind == PointKind::terminal ? "T" : "S") + std::to_string(v.index);
        };
        for (const auto& [a, b] : t.edges) {
            ++degree[label(a)];
            ++degree[label(b)];
        }
        for (int j = 0; j < 10; ++j) CHECK(degree["T" + std::to_string(j)] == 1);
        for (int k = 1; k <= 8; ++k) CHECK(degree["S" + std::to_string(k)] == 3);
    }
    CHECK_THROWS_AS(build_sausage_topology(2), SpecError);
}

TEST_CASE("tree length") {
    const SausageTopology t = build_sausage_topology(3);
    const std::vector<Point3> tri{{0, 0, 0}, {1, 0, 0}, {0.5, std::sqrt(3.0) / 2.0, 0}};

    const std::vector<Point3> fermat{{0.5, std::sqrt(3.0) / 6.0, 0}};
    CHECK(tree_length(tri, fermat, t) ==
          doctest::Approx(1.7320508075688772).epsilon(1e-14));

    const std::vector<Point3> collapsed{{0, 0, 0}};  // steiner on a terminal
    CHECK(tree_length(tri, collapsed, t) == doctest::Approx(2.0).epsilon(1e-14));

    CHECK_THROWS_AS(tree_length(tri, {}, t), SpecError);

    SUBCASE("ansatz length per terminal approaches the analytic density") {
        const double density = steiner_length_density(1, kConjecture);
        for (int n : {50, 200}) {
            std::vector<Point3> terms, ansatz;
            for (int j = 0; j < n; ++j) terms.push_back(terminal_point(j, kConjecture));
            for (int k = 1; k <= n - 2; ++k)
                ansatz.push_back(steiner_point_ansatz(k, kConjecture));
            const double per_point =
                tree_length(terms, ansatz, build_sausage_topology(n)) / n;
            CHECK(std::abs(per_point - density) <= 5.0 / n);
        }
    }
}

TEST_CASE("mst length") {
    const std::vector<Point3> three{{1, 0, 0}, {0, 1, 0}, {-1, 0, 0}};
    CHECK(mst_length(three) == doctest::Approx(2.8284271247461901).epsilon(1e-14));

    const std::vector<Point3> two{{0, 0, 0}, {3, 4, 0}};
    CHECK(mst_length(two) == doctest::Approx(5.0).epsilon(1e-15));

    CHECK_THROWS_AS(mst_length(std::vector<Point3>{{0, 0, 0}}), SpecError);

    SUBCASE("helix mst is the consecutive-step path at the conjecture point") {
        const int n = 200;
        std::vector<Point3> terms;
        for (int j = 0; j < n; ++j) terms.push_back(terminal_point(j, kConjecture));
        const double expect = (n - 1) * step_distance(1, kConjecture);
        CHECK(std::abs(mst_length(terms) - expect) <= 1e-10 * expect);
    }
    SUBCASE("asymptotic step formula with end correction") {
        for (int n : {50, 200}) {
            const auto pts = testing::sample_feasible(5, 97 + n);
            for (const HelixParams& p : pts) {
                std::vector<Point3> terms;
                for (int j = 0; j < n; ++j) terms.push_back(terminal_point(j, p));
                double d_min = std::numeric_limits<double>::infinity();
                for (int m = 1; m <= n - 1; ++m)
                    d_min = std::min(d_min, step_distance(m, p));
                const double mst = mst_length(terms);
                CHECK(std::abs(mst - (n - 1) * d_min) / mst <= 2.0 / n);
            }
        }
    }
}

TEST_CASE("angles at a steiner vertex") {
    const std::array<Point3, 3> tri{{{0, 0, 0}, {1, 0, 0}, {0.5, std::sqrt(3.0) / 2.0, 0}}};
    const auto angles = angles_at_steiner({0.5, std::sqrt(3.0) / 6.0, 0}, tri);
    for (double a : angles) CHECK(a == doctest::Approx(120.0).epsilon(1e-12));

    CHECK_THROWS_AS(angles_at_steiner({0, 0, 0}, tri), DegenerateError);

    SUBCASE("coplanar angles sum to 360") {
        const std::array<Point3, 3> skew{{{1.2, 0, 0}, {-0.3, 0.9, 0}, {-0.1, -1.4, 0}}};
        const auto a = angles_at_steiner({0.11, 0.07, 0.0}, skew);
        CHECK(a[0] + a[1] + a[2] == doctest::Approx(360.0).epsilon(1e-12));
    }
}

TEST_CASE("fermat relaxation") {
    const SausageTopology t3 = build_sausage_topology(3);

    SUBCASE("equilateral triangle from the centroid") {
        const std::vector<Point3> tri{{0, 0, 0}, {1, 0, 0}, {0.5, std::sqrt(3.0) / 2.0, 0}};
        const std::vector<Point3> init{{0.5, 0.28, 0.0}};
        const RelaxResult r = optimize_steiner_points(tri, t3, init, 1e-15);
        CHECK(r.length == doctest::Approx(1.7320508075688772).epsilon(1e-10));
        CHECK(std::abs(r.positions[0].x - 0.5) < 1e-6);
        CHECK(std::abs(r.positions[0].y - 0.28867513459481288) < 1e-6);
        CHECK(r.degenerate_edges.empty());
        CHECK(r.monotonicity_violations == 0);
    }

    SUBCASE("collinear terminals collapse onto the middle point") {
        const std::vector<Point3> line{{0, 0, 0}, {1, 0, 0}, {2, 0, 0}};
        const std::vector<Point3> init{{1.0, 0.3, 0.0}};
        const RelaxResult r = optimize_steiner_points(line, t3, init, 1e-14);
        CHECK(r.length == doctest::Approx(2.0).epsilon(1e-12));
        CHECK_FALSE(r.degenerate_edges.empty());
    }

    SUBCASE("perturbed ansatz returns to the helical equilibrium") {
        const int n = 32;
        std::vector<Point3> terms, ansatz;
        for (int j = 0; j < n; ++j) terms.push_back(terminal_point(j, kConjecture));
        for (int k = 1; k <= n - 2; ++k)
            ansatz.push_back(steiner_point_ansatz(k, kConjecture));
        const SausageTopology t = build_sausage_topology(n);
        const double ansatz_len = tree_length(terms, ansatz, t);

        std::mt19937_64 rng(1234);
        std::uniform_real_distribution<double> jitter(-1e-3, 1e-3);
        std::vector<Point3> init = ansatz;
        for (Point3& p : init) {
            p.x += jitter(rng);
            p.y += jitter(rng);
            p.z += jitter(rng);
        }

        const RelaxResult r = optimize_steiner_points(terms, t, init, 1e-13);
        CHECK(r.monotonicity_violations == 0);
        CHECK(r.length <= ansatz_len + 1e-9);
        // end effects may shave a little; 0.05 per end segment pair
        CHECK(r.length >= ansatz_len - 0.05 * 4);
        // The end deviation decays geometrically toward the centre: the
        // central vertices return to the ansatz, the rest of the middle
        // third carries only the measured boundary-layer tail.
        for (int k = 13; k <= 18; ++k) {
            const Point3 d = r.positions[k - 1] - ansatz[k - 1];
            CHECK(d.norm() <= 1e-4);
        }
        for (int k = 11; k <= 21; ++k) {
            const Point3 d = r.positions[k - 1] - ansatz[k - 1];
            CHECK(d.norm() <= 5e-4);
        }
    }

    SUBCASE("budget exhaustion raises") {
        const std::vector<Point3> tri{{0, 0, 0}, {1, 0, 0}, {0.5, std::sqrt(3.0) / 2.0, 0}};
        CHECK_THROWS_AS(
            optimize_steiner_points(tri, t3, std::vector<Point3>{{0.5, 0.28, 0.0}},
                                    1e-15, 2),
            NonConvergenceError);
    }
}

TEST_CASE("finite steiner ratio oracle") {
    SUBCASE("validation") {
        CHECK_THROWS_AS(steiner_ratio_finite(2, kConjecture), SpecError);
        CHECK_THROWS_AS(steiner_ratio_finite(10, {kOmegaR, 0.0}), DomainError);
        CHECK_THROWS_AS(steiner_ratio_finite(3, {0.5, 0.3}), DomainError);
    }

    SUBCASE("ansatz angles are 120 degrees at the conjecture point") {
        const OracleReport r = steiner_ratio_finite(32, kConjecture, 1e-11);
        CHECK(r.max_angle_error_deg < 1e-9);
        CHECK(r.ratio <= 1.0);
        CHECK(r.ratio >= kGrahamHwangBound - 1e-9);
        CHECK(r.degenerate_edges.empty());
    }

    SUBCASE("n = 3 fermat case never exceeds the mst") {
        const OracleReport r = steiner_ratio_finite(3, {kPi / 2.0, 0.1}, 1e-13);
        CHECK(r.ratio <= 1.0 + 1e-12);
        CHECK(r.ratio > 0.0);
        CHECK(r.steiner_length >= (kGrahamHwangBound - 1e-9) * r.mst_length);
    }

    SUBCASE("ratio converges toward the analytic value as n doubles") {
        double prev_err = -1.0;
        for (int n : {25, 50, 100, 200}) {
            const OracleReport r = steiner_ratio_finite(n, kConjecture, 1e-11);
            const double err = std::abs(r.ratio - kRhoR);
            CHECK(r.steiner_length >= (kGrahamHwangBound - 1e-9) * r.mst_length);
            if (prev_err >= 0.0) CHECK(err <= 0.75 * prev_err);
            prev_err = err;
        }
    }
}
