#pragma once

#include <span>
#include <string>
#include <vector>

#include "srf/optimize.hpp"
#include "srf/oracle.hpp"

namespace srf {

// Shortest decimal text that parses back to exactly the same double
// (never more than 17 significant digits). Rejects non-finite values.
std::string format_double(double v);

struct SurfaceRow {
    double omega{};
    double alpha{};
    int m{};
    double rho{};  // ignored when !feasible
    bool feasible{};
};

// Header omega,alpha,m,rho_m,feasible; infeasible rows carry an empty rho
// field. UTF-8, comma separated, LF terminators.
std::string write_csv(std::span<const SurfaceRow> rows);

struct CurvePoint {
    int m{};
    double omega{};
    double alpha{};
};

// Header m,omega,alpha; one row per unit-rho root.
std::string write_csv(std::span<const CurvePoint> points);

std::string write_report(const OptimumReport& report);
std::string write_report(const ConjectureResult& result);

struct OmegaStepDiagnostic {
    long count{};
    double mean{};
    double median{};  // robust against 2*pi branch slips at relaxed end vertices
    double min{};
    double max{};
};

std::string write_report(const OracleReport& report, const OmegaStepDiagnostic& steps);

// Consecutive differences of recovered Steiner angles of a relaxed tree.
OmegaStepDiagnostic omega_step_diagnostic(std::span<const Point3> steiner_positions,
                                          double alpha);

// Exit codes: 0 ok, 2 usage, 3 domain/feasibility, 4 convergence/cross-check,
// 5 I/O failure. One machine-readable line on stderr per failure.
int run_cli(int argc, const char* const* argv);
int run_cli(const std::vector<std::string>& args);  // without argv[0]

}  // namespace srf
