#pragma once

#include <map>
#include <string>
#include <vector>

#include "srf/analytic.hpp"
#include "srf/region.hpp"
#include "srf/types.hpp"

namespace srf {

struct GridScanResult {
    int n_omega{};
    int n_alpha{};
    // Row-major [i_omega * n_alpha + i_alpha]; NaN marks infeasible cells.
    std::vector<double> rho;
    HelixParams incumbent{};
    double incumbent_rho{};
    long evaluations{};
    // Feasible cells strictly below every feasible 4-neighbour (diagnostic).
    std::vector<HelixParams> local_minima;
};

// Evaluate the SRF on a lattice over window x (0, alpha_hi], mask cells outside
// the compact region, return the feasible minimizer. Deterministic: cells are
// reduced in lattice order. Throws EmptyFeasibleSetError when nothing passes.
GridScanResult grid_scan(const OmegaWindow& window, double alpha_hi, int n_omega,
                         int n_alpha, int m_max = kDefaultMMax);

struct OptimumReport {
    double omega{};
    double alpha{};
    double rho{};
    std::vector<int> tie;                  // denominator tie set of srf at the optimum
    std::map<int, double> surface_values;  // rho_m at the optimum, m = 1..5
    double tie_residual_12{};              // |rho_1 - rho_2|
    double tie_residual_13{};              // |rho_1 - rho_3|
    bool interior{};                       // feasibility ring of radius 10*tol
    int grid_n_omega{};
    int grid_n_alpha{};
    double refine_tolerance{};
    long evaluations{};
};

// Derivative-free downhill-simplex descent of the SRF from a feasible start,
// with the region predicate as a hard barrier. Terminates when the simplex
// diameter falls below tol; NonConvergenceError past the evaluation budget.
OptimumReport refine_local(const HelixParams& start, double tol, int m_max = kDefaultMMax,
                           long eval_budget = 100000);

// Solve d_1^2 = d_2^2, d_1^2 = d_3^2 for (omega, u = alpha^2 omega^2) by
// damped Newton iteration (factor 0.5, residual < 1e-13); the nondegenerate
// root has cos(omega) = -2/3. DegenerateRootError when the iteration lands on
// the cos(omega) = 1 root.
HelixParams solve_triple_point(const HelixParams& initial);

struct ConjectureConfig {
    int n_omega{400};
    int n_alpha{400};
    double alpha_hi{2.0};
    int m_max{kDefaultMMax};
    double refine_tol{1e-12};
    long eval_budget{100000};
};

struct ConjectureResult {
    OptimumReport report;        // from the free minimization route
    HelixParams triple_point{};  // from the algebraic route
    double triple_rho{};
    double closed_form_rho{};  // (3*sqrt(3) + sqrt(7)) / 10
    std::string provenance;
};

// Two independent routes to the optimum (grid + simplex vs. triple-point
// solve) with a mandatory cross-check: 1e-8 in (omega, alpha), 1e-10 in rho.
// CrossCheckError names the disagreeing pair.
ConjectureResult conjecture_report(const ConjectureConfig& config = {});

}  // namespace srf
