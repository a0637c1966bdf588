#include "srf/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "srf/errors.hpp"
#include "srf/helix.hpp"

namespace srf {

namespace {

using ordered_json = nlohmann::ordered_json;

struct UsageError : Error {
    using Error::Error;
};

std::string vertex_label(const VertexRef& v) {
    return (v.kind == PointKind::terminal ? "T" : "S") + std::to_string(v.index);
}

ordered_json edges_json(const std::vector<std::pair<VertexRef, VertexRef>>& edges) {
    ordered_json arr = ordered_json::array();
    for (const auto& [a, b] : edges) arr.push_back(vertex_label(a) + "-" + vertex_label(b));
    return arr;
}

double checked(double v, const char* what) {
    if (!std::isfinite(v)) throw IoError(std::string("non-finite value for ") + what);
    return v;
}

ordered_json report_body(const OptimumReport& r) {
    ordered_json j;
    j["omega"] = checked(r.omega, "omega");
    j["alpha"] = checked(r.alpha, "alpha");
    j["rho"] = checked(r.rho, "rho");
    j["tie"] = r.tie;
    ordered_json surf;
    for (const auto& [m, v] : r.surface_values)
        surf[std::to_string(m)] = checked(v, "surface value");
    j["surface_values"] = surf;
    j["tie_residuals"] = {checked(r.tie_residual_12, "tie residual"),
                          checked(r.tie_residual_13, "tie residual")};
    j["interior"] = r.interior;
    j["grid_resolution"] = {r.grid_n_omega, r.grid_n_alpha};
    j["refine_tolerance"] = r.refine_tolerance;
    j["evaluations"] = r.evaluations;
    return j;
}

}  // namespace

std::string format_double(double v) {
    if (!std::isfinite(v)) throw IoError("refusing to format a non-finite value");
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

std::string write_csv(std::span<const SurfaceRow> rows) {
    std::string out = "omega,alpha,m,rho_m,feasible\n";
    for (const SurfaceRow& r : rows) {
        out += format_double(r.omega);
        out += ',';
        out += format_double(r.alpha);
        out += ',';
        out += std::to_string(r.m);
        out += ',';
        if (r.feasible) out += format_double(r.rho);
        out += ',';
        out += r.feasible ? '1' : '0';
        out += '\n';
    }
    return out;
}

std::string write_csv(std::span<const CurvePoint> points) {
    std::string out = "m,omega,alpha\n";
    for (const CurvePoint& p : points) {
        out += std::to_string(p.m);
        out += ',';
        out += format_double(p.omega);
        out += ',';
        out += format_double(p.alpha);
        out += '\n';
    }
    return out;
}

std::string write_report(const OptimumReport& report) {
    return report_body(report).dump(2) + "\n";
}

std::string write_report(const ConjectureResult& result) {
    ordered_json j = report_body(result.report);
    j["rho_min"] = checked(result.report.rho, "rho_min");
    j["triple_omega"] = checked(result.triple_point.omega, "triple omega");
    j["triple_alpha"] = checked(result.triple_point.alpha, "triple alpha");
    j["triple_rho"] = checked(result.triple_rho, "triple rho");
    j["closed_form_rho"] = checked(result.closed_form_rho, "closed form rho");
    j["closed_form_abs_diff"] =
        checked(std::abs(result.report.rho - result.closed_form_rho), "closed form diff");
    j["provenance"] = result.provenance;
    return j.dump(2) + "\n";
}

std::string write_report(const OracleReport& report, const OmegaStepDiagnostic& steps) {
    ordered_json j;
    j["n"] = report.n;
    j["omega"] = checked(report.params.omega, "omega");
    j["alpha"] = checked(report.params.alpha, "alpha");
    j["mst_length"] = checked(report.mst_length, "mst_length");
    j["steiner_length"] = checked(report.steiner_length, "steiner_length");
    j["ratio"] = checked(report.ratio, "ratio");
    j["max_angle_error_deg"] = checked(report.max_angle_error_deg, "max_angle_error_deg");
    j["iterations"] = report.iterations;
    j["degenerate_edges"] = edges_json(report.degenerate_edges);
    ordered_json d;
    d["count"] = steps.count;
    if (steps.count > 0) {
        d["mean"] = checked(steps.mean, "omega step mean");
        d["median"] = checked(steps.median, "omega step median");
        d["min"] = checked(steps.min, "omega step min");
        d["max"] = checked(steps.max, "omega step max");
    }
    j["omega_step_diagnostic"] = d;
    return j.dump(2) + "\n";
}

OmegaStepDiagnostic omega_step_diagnostic(std::span<const Point3> steiner_positions,
                                          double alpha) {
    OmegaStepDiagnostic d;
    d.min = std::numeric_limits<double>::infinity();
    d.max = -std::numeric_limits<double>::infinity();
    std::vector<double> steps;
    double sum = 0.0;
    for (std::size_t k = 0; k + 1 < steiner_positions.size(); ++k) {
        const double step = recover_angle(steiner_positions[k + 1], alpha) -
                            recover_angle(steiner_positions[k], alpha);
        steps.push_back(step);
        sum += step;
        d.min = std::min(d.min, step);
        d.max = std::max(d.max, step);
    }
    d.count = static_cast<long>(steps.size());
    if (!steps.empty()) {
        d.mean = sum / static_cast<double>(steps.size());
        std::sort(steps.begin(), steps.end());
        d.median = steps[steps.size() / 2];
    }
    return d;
}

namespace {

std::pair<int, int> parse_grid(const std::string& text) {
    const auto x = text.find('x');
    if (x == std::string::npos)
        throw UsageError("grid must be WIDTHxHEIGHT, got '" + text + "'");
    try {
        return {std::stoi(text.substr(0, x)), std::stoi(text.substr(x + 1))};
    } catch (const std::exception&) {
        throw UsageError("grid must be WIDTHxHEIGHT, got '" + text + "'");
    }
}

std::pair<double, double> parse_range(const std::string& text) {
    const auto c = text.find(':');
    if (c == std::string::npos)
        throw UsageError("range must be LO:HI, got '" + text + "'");
    try {
        const double lo = std::stod(text.substr(0, c));
        const double hi = std::stod(text.substr(c + 1));
        if (!(lo <= hi)) throw UsageError("range must satisfy LO <= HI: '" + text + "'");
        return {lo, hi};
    } catch (const UsageError&) {
        throw;
    } catch (const std::exception&) {
        throw UsageError("range must be LO:HI, got '" + text + "'");
    }
}

// Accepts "3", "1..5" and "1,2,5".
std::vector<int> parse_m_list(const std::string& text) {
    std::vector<int> ms;
    try {
        if (const auto dots = text.find(".."); dots != std::string::npos) {
            const int lo = std::stoi(text.substr(0, dots));
            const int hi = std::stoi(text.substr(dots + 2));
            for (int m = lo; m <= hi; ++m) ms.push_back(m);
        } else {
            std::stringstream ss(text);
            std::string tok;
            while (std::getline(ss, tok, ',')) ms.push_back(std::stoi(tok));
        }
    } catch (const std::exception&) {
        throw UsageError("bad m list '" + text + "' (use M, LO..HI or M1,M2,...)");
    }
    std::sort(ms.begin(), ms.end());
    ms.erase(std::unique(ms.begin(), ms.end()), ms.end());
    if (ms.empty() || ms.front() < 1)
        throw UsageError("m list must contain integers >= 1");
    return ms;
}

void emit(const std::string& payload, const std::string& path) {
    if (path.empty() || path == "-") {
        std::cout << payload;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot open output file '" + path + "'");
    f << payload;
    if (!f) throw IoError("failed writing output file '" + path + "'");
}

double lattice_value(double lo, double hi, int n, int i) {
    if (n == 1) return lo;
    return lo + (hi - lo) * static_cast<double>(i) / (n - 1);
}

int cmd_surface(const std::vector<int>& ms, int n_omega, int n_alpha,
                std::pair<double, double> omega_range, std::pair<double, double> alpha_range,
                int threads, const std::string& out) {
    if (n_omega < 1 || n_alpha < 1) throw UsageError("grid must be at least 1x1");
    if (threads < 1) throw UsageError("--threads must be >= 1");

    const std::size_t per_m = static_cast<std::size_t>(n_omega) * n_alpha;
    std::vector<SurfaceRow> rows(ms.size() * per_m);

    auto fill_rows = [&](int i_begin, int i_end) {
        for (std::size_t mi = 0; mi < ms.size(); ++mi) {
            const int m = ms[mi];
            for (int i = i_begin; i < i_end; ++i) {
                const double omega =
                    lattice_value(omega_range.first, omega_range.second, n_omega, i);
                const bool numerator_ok = a_coefficient(1, omega) > 0.0;
                for (int j = 0; j < n_alpha; ++j) {
                    const double alpha =
                        lattice_value(alpha_range.first, alpha_range.second, n_alpha, j);
                    SurfaceRow& row =
                        rows[mi * per_m + static_cast<std::size_t>(i) * n_alpha + j];
                    row = {omega, alpha, m, 0.0, false};
                    if (!numerator_ok || alpha < 0.0) continue;
                    const double rho = rho_surface(m, {omega, alpha});
                    if (std::isfinite(rho)) {
                        row.rho = rho;
                        row.feasible = true;
                    }
                }
            }
        }
    };

    if (threads == 1 || n_omega == 1) {
        fill_rows(0, n_omega);
    } else {
        const int workers = std::min(threads, n_omega);
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(workers));
        const int chunk = (n_omega + workers - 1) / workers;
        for (int t = 0; t < workers; ++t) {
            const int b = t * chunk;
            const int e = std::min(n_omega, b + chunk);
            if (b < e) pool.emplace_back(fill_rows, b, e);
        }
        for (auto& th : pool) th.join();
    }

    emit(write_csv(rows), out);
    return 0;
}

int cmd_region(int samples, const std::string& out) {
    if (samples < 2) throw UsageError("--samples must be >= 2");
    const OmegaWindow w = omega_window();
    std::vector<CurvePoint> pts;
    for (int m = 1; m <= 5; ++m) {
        for (int i = 0; i < samples; ++i) {
            const double omega = lattice_value(w.lo, w.hi, samples, i);
            for (double alpha : unit_rho_curve(m, omega)) pts.push_back({m, omega, alpha});
        }
    }
    emit(write_csv(pts), out);
    return 0;
}

int cmd_minimize(int n_omega, int n_alpha, double alpha_hi, int m_max, double tol,
                 const std::string& out) {
    const GridScanResult grid = grid_scan(omega_window(), alpha_hi, n_omega, n_alpha, m_max);
    OptimumReport rep = refine_local(grid.incumbent, tol, m_max);
    rep.grid_n_omega = n_omega;
    rep.grid_n_alpha = n_alpha;
    rep.evaluations += grid.evaluations;
    emit(write_report(rep), out);
    return 0;
}

int cmd_triple(double omega0, double alpha0, const std::string& out) {
    const HelixParams sol = solve_triple_point({omega0, alpha0});
    OptimumReport rep;
    rep.omega = sol.omega;
    rep.alpha = sol.alpha;
    const SrfValue value = steiner_ratio(sol);
    rep.rho = value.rho;
    rep.tie = value.tie;
    for (int m = 1; m <= 5; ++m) rep.surface_values[m] = rho_surface(m, sol);
    rep.tie_residual_12 = std::abs(rep.surface_values[1] - rep.surface_values[2]);
    rep.tie_residual_13 = std::abs(rep.surface_values[1] - rep.surface_values[3]);
    rep.interior = in_compact_region(sol).inside;
    rep.refine_tolerance = 1e-13;  // newton residual bound
    emit(write_report(rep), out);
    return 0;
}

int cmd_conjecture(int n_omega, int n_alpha, double alpha_hi, int m_max, double tol,
                   const std::string& out) {
    ConjectureConfig cfg;
    cfg.n_omega = n_omega;
    cfg.n_alpha = n_alpha;
    cfg.alpha_hi = alpha_hi;
    cfg.m_max = m_max;
    cfg.refine_tol = tol;
    emit(write_report(conjecture_report(cfg)), out);
    return 0;
}

int cmd_verify(int n, double omega, double alpha, double tol, long sweep_budget,
               const std::string& out) {
    const OracleReport rep = steiner_ratio_finite(n, {omega, alpha}, tol, sweep_budget);
    const OmegaStepDiagnostic steps = omega_step_diagnostic(rep.optimized_steiner, alpha);
    emit(write_report(rep, steps), out);
    return 0;
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
    CLI::App app{"Steiner ratio function for helical point sets in 3-space"};
    app.require_subcommand(1);
    app.fallthrough();

    const OmegaWindow window = omega_window();
    const std::string default_omega_range =
        format_double(window.lo) + ":" + format_double(window.hi);

    std::string out;
    app.add_option("--out", out, "output path (default: stdout)")->capture_default_str();
    std::string format = "auto";
    app.add_option("--format", format, "csv|json (default per command)")
        ->check(CLI::IsMember({"auto", "csv", "json"}));
    int threads = 1;
    app.add_option("--threads", threads, "worker threads for grid evaluation");

    auto* surface = app.add_subcommand("surface", "rho_m grids as CSV");
    std::string m_list = "1..5";
    std::string grid_text = "400x400";
    std::string omega_text = default_omega_range;
    std::string alpha_text = "0:2";
    surface->add_option("--m", m_list, "skip classes: M, LO..HI or M1,M2,...")
        ->capture_default_str();
    surface->add_option("--grid", grid_text, "lattice WIDTHxHEIGHT")->capture_default_str();
    surface->add_option("--omega", omega_text, "omega range LO:HI")->capture_default_str();
    surface->add_option("--alpha", alpha_text, "alpha range LO:HI")->capture_default_str();

    auto* region = app.add_subcommand("region", "unit-rho curves over the omega window");
    int samples = 400;
    region->add_option("--samples", samples, "omega samples across the window")
        ->capture_default_str();

    auto* minimize = app.add_subcommand("minimize", "grid scan + local refinement");
    std::string min_grid = "400x400";
    double alpha_hi = 2.0;
    int m_max = kDefaultMMax;
    double tol = 1e-12;
    minimize->add_option("--grid", min_grid, "scan lattice WIDTHxHEIGHT (min 64x64)")
        ->capture_default_str();
    minimize->add_option("--alpha-hi", alpha_hi, "alpha scan upper bound")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    minimize->add_option("--m-max", m_max, "surface family truncation")
        ->check(CLI::Range(3, 1024))
        ->capture_default_str();
    minimize->add_option("--tol", tol, "simplex diameter tolerance")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();

    auto* triple = app.add_subcommand("triple", "three-surface intersection solve");
    double omega0 = 2.0;
    double alpha0 = 0.3;
    triple->add_option("--omega", omega0, "initial omega")->capture_default_str();
    triple->add_option("--alpha", alpha0, "initial alpha")->capture_default_str();

    auto* conjecture =
        app.add_subcommand("conjecture", "full pipeline with cross-checked optimum");
    std::string conj_grid = "400x400";
    double conj_alpha_hi = 2.0;
    int conj_m_max = kDefaultMMax;
    double conj_tol = 1e-12;
    conjecture->add_option("--grid", conj_grid, "scan lattice WIDTHxHEIGHT (min 64x64)")
        ->capture_default_str();
    conjecture->add_option("--alpha-hi", conj_alpha_hi, "alpha scan upper bound")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    conjecture->add_option("--m-max", conj_m_max, "surface family truncation")
        ->check(CLI::Range(3, 1024))
        ->capture_default_str();
    conjecture->add_option("--tol", conj_tol, "simplex diameter tolerance")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();

    auto* verify = app.add_subcommand("verify", "finite-n tree oracle report");
    int oracle_n = 100;
    double v_omega = 2.3005239830218630;
    double v_alpha = 0.26454000216541143;
    double v_tol = 1e-10;
    long sweep_budget = 100000;
    verify->add_option("--n", oracle_n, "terminal count")
        ->check(CLI::Range(3, 10000))
        ->capture_default_str();
    verify->add_option("--omega", v_omega, "angular step")->capture_default_str();
    verify->add_option("--alpha", v_alpha, "pitch parameter")->capture_default_str();
    verify->add_option("--tol", v_tol, "relaxation length tolerance")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    verify->add_option("--sweep-budget", sweep_budget, "relaxation sweep budget")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        std::cerr << "error: usage: " << e.what() << "\n";
        return 2;
    }

    try {
        if (format == "csv" && !(surface->parsed() || region->parsed()))
            throw UsageError("csv output is only available for surface and region");
        if (format == "json" && (surface->parsed() || region->parsed()))
            throw UsageError("json output is not available for surface and region");

        if (surface->parsed()) {
            const auto [nw, na] = parse_grid(grid_text);
            return cmd_surface(parse_m_list(m_list), nw, na, parse_range(omega_text),
                               parse_range(alpha_text), threads, out);
        }
        if (region->parsed()) return cmd_region(samples, out);
        if (minimize->parsed()) {
            const auto [nw, na] = parse_grid(min_grid);
            if (nw < 64 || na < 64) throw UsageError("scan grid must be at least 64x64");
            return cmd_minimize(nw, na, alpha_hi, m_max, tol, out);
        }
        if (triple->parsed()) return cmd_triple(omega0, alpha0, out);
        if (conjecture->parsed()) {
            const auto [nw, na] = parse_grid(conj_grid);
            if (nw < 64 || na < 64) throw UsageError("scan grid must be at least 64x64");
            return cmd_conjecture(nw, na, conj_alpha_hi, conj_m_max, conj_tol, out);
        }
        if (verify->parsed())
            return cmd_verify(oracle_n, v_omega, v_alpha, v_tol, sweep_budget, out);
        throw UsageError("no subcommand given");
    } catch (const UsageError& e) {
        std::cerr << "error: usage: " << e.what() << "\n";
        return 2;
    } catch (const NonConvergenceError& e) {
        std::cerr << "error: convergence: " << e.what() << "\n";
        return 4;
    } catch (const CrossCheckError& e) {
        std::cerr << "error: cross-check: " << e.what() << "\n";
        return 4;
    } catch (const DegenerateRootError& e) {
        std::cerr << "error: convergence: " << e.what() << "\n";
        return 4;
    } catch (const IoError& e) {
        std::cerr << "error: io: " << e.what() << "\n";
        return 5;
    } catch (const EmptyFeasibleSetError& e) {
        std::cerr << "error: feasibility: " << e.what() << "\n";
        return 3;
    } catch (const Error& e) {
        std::cerr << "error: domain: " << e.what() << "\n";
        return 3;
    }
}

int run_cli(const std::vector<std::string>& args) {
    std::vector<std::string> argv_storage;
    argv_storage.reserve(args.size() + 1);
    argv_storage.push_back("srf");
    argv_storage.insert(argv_storage.end(), args.begin(), args.end());
    std::vector<const char*> argv;
    argv.reserve(argv_storage.size());
    for (const std::string& s : argv_storage) argv.push_back(s.c_str());
    return run_cli(static_cast<int>(argv.size()), argv.data());
}

}  // namespace srf
