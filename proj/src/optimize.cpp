#include "srf/optimize.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <sstream>

#include "srf/errors.hpp"

namespace srf {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

double masked_rho(const HelixParams& p, int m_max) {
    if (p.alpha < 0.0) return kInf;
    const RegionPredicateResult r = in_compact_region(p, m_max);
    return r.inside ? r.rho : kInf;
}

void fill_surfaces(OptimumReport& rep, const HelixParams& p) {
    for (int m = 1; m <= 5; ++m) rep.surface_values[m] = rho_surface(m, p);
    rep.tie_residual_12 = std::abs(rep.surface_values[1] - rep.surface_values[2]);
    rep.tie_residual_13 = std::abs(rep.surface_values[1] - rep.surface_values[3]);
}

bool feasibility_ring(const HelixParams& center, double radius, int m_max) {
    constexpr int kRingSamples = 16;
    for (int i = 0; i < kRingSamples; ++i) {
        const double phi = kTwoPi * static_cast<double>(i) / kRingSamples;
        const HelixParams q{center.omega + radius * std::cos(phi),
                            center.alpha + radius * std::sin(phi)};
        if (q.alpha < 0.0) return false;
        if (!in_compact_region(q, m_max).inside) return false;
    }
    return true;
}

}  // namespace

GridScanResult grid_scan(const OmegaWindow& window, double alpha_hi, int n_omega,
                         int n_alpha, int m_max) {
    if (n_omega < 64 || n_alpha < 64)
        throw SpecError("grid scan resolution must be at least 64x64");
    if (alpha_hi <= 0.0) throw DomainError("alpha_hi must be > 0");

    GridScanResult res;
    res.n_omega = n_omega;
    res.n_alpha = n_alpha;
    res.rho.assign(static_cast<std::size_t>(n_omega) * n_alpha, kNan);

    double best = kInf;
    const double dw = (window.hi - window.lo) / (n_omega - 1);
    for (int i = 0; i < n_omega; ++i) {
        const double omega = window.lo + dw * static_cast<double>(i);
        for (int j = 0; j < n_alpha; ++j) {
            const double alpha = alpha_hi * static_cast<double>(j + 1) / n_alpha;
            const HelixParams p{omega, alpha};
            const RegionPredicateResult r = in_compact_region(p, m_max);
            ++res.evaluations;
            if (!r.inside) continue;
            res.rho[static_cast<std::size_t>(i) * n_alpha + j] = r.rho;
            if (r.rho < best) {
                best = r.rho;
                res.incumbent = p;
            }
        }
    }
    if (!std::isfinite(best))
        throw EmptyFeasibleSetError("no lattice point lies inside the compact region");
    res.incumbent_rho = best;

    auto cell = [&](int i, int j) -> double {
        if (i < 0 || j < 0 || i >= n_omega || j >= n_alpha) return kNan;
        return res.rho[static_cast<std::size_t>(i) * n_alpha + j];
    };
    for (int i = 0; i < n_omega; ++i) {
        for (int j = 0; j < n_alpha; ++j) {
            const double v = cell(i, j);
            if (std::isnan(v)) continue;
            const std::array<double, 4> nb{cell(i - 1, j), cell(i + 1, j),
                                           cell(i, j - 1), cell(i, j + 1)};
            bool is_min = true;
            for (double w : nb)
                if (!std::isnan(w) && w <= v) is_min = false;
            if (is_min)
                res.local_minima.push_back(
                    {window.lo + dw * i, alpha_hi * static_cast<double>(j + 1) / n_alpha});
        }
    }
    return res;
}

OptimumReport refine_local(const HelixParams& start, double tol, int m_max,
                           long eval_budget) {
    if (tol < 1e-14) throw DomainError("refine tolerance must be >= 1e-14");
    if (!in_compact_region(start, m_max).inside)
        throw DomainError("refine start point is not inside the compact region");

    long evals = 0;
    auto f = [&](const HelixParams& p) {
        ++evals;
        return masked_rho(p, m_max);
    };

    // Downhill simplex with standard coefficients; infeasible vertices carry
    // +inf so the region boundary acts as a hard barrier.
    constexpr double kReflect = 1.0, kExpand = 2.0, kContract = 0.5, kShrink = 0.5;
    std::array<HelixParams, 3> v;
    std::array<double, 3> fv;
    v[0] = start;
    fv[0] = f(start);
    double h = 0.02;
    for (int dim = 0; dim < 2; ++dim) {
        HelixParams p = start;
        double step = h;
        for (int tries = 0; tries < 60; ++tries) {
            p = start;
            (dim == 0 ? p.omega : p.alpha) += step;
            if (std::isfinite(masked_rho(p, m_max))) break;
            step *= 0.5;
        }
        v[dim + 1] = p;
        fv[dim + 1] = f(p);
    }

    auto diameter = [&]() {
        double d = 0.0;
        for (int i = 0; i < 3; ++i)
            for (int j = i + 1; j < 3; ++j) {
                const double dx = v[i].omega - v[j].omega;
                const double dy = v[i].alpha - v[j].alpha;
                d = std::max(d, std::hypot(dx, dy));
            }
        return d;
    };

    while (diameter() >= tol) {
        if (evals > eval_budget)
            throw NonConvergenceError("simplex refinement exceeded evaluation budget");

        std::array<int, 3> order{0, 1, 2};
        std::sort(order.begin(), order.end(), [&](int a, int b) { return fv[a] < fv[b]; });
        const int lo = order[0], mid = order[1], hi = order[2];

        const HelixParams centroid{0.5 * (v[lo].omega + v[mid].omega),
                                   0.5 * (v[lo].alpha + v[mid].alpha)};
        auto along = [&](double t) {
            return HelixParams{centroid.omega + t * (centroid.omega - v[hi].omega),
                               centroid.alpha + t * (centroid.alpha - v[hi].alpha)};
        };

        const HelixParams xr = along(kReflect);
        const double fr = f(xr);
        if (fr < fv[lo]) {
            const HelixParams xe = along(kExpand);
            const double fe = f(xe);
            if (fe < fr) {
                v[hi] = xe;
                fv[hi] = fe;
            } else {
                v[hi] = xr;
                fv[hi] = fr;
            }
        } else if (fr < fv[mid]) {
            v[hi] = xr;
            fv[hi] = fr;
        } else {
            const bool outside = fr < fv[hi];
            const HelixParams xc = along(outside ? kContract : -kContract);
            const double fc = f(xc);
            if (fc < (outside ? fr : fv[hi])) {
                v[hi] = xc;
                fv[hi] = fc;
            } else {
                for (int i : {mid, hi}) {
                    v[i] = {v[lo].omega + kShrink * (v[i].omega - v[lo].omega),
                            v[lo].alpha + kShrink * (v[i].alpha - v[lo].alpha)};
                    fv[i] = f(v[i]);
                }
            }
        }
    }

    const int best =
        static_cast<int>(std::min_element(fv.begin(), fv.end()) - fv.begin());
    OptimumReport rep;
    rep.omega = v[best].omega;
    rep.alpha = v[best].alpha;
    const SrfValue value = steiner_ratio(v[best], m_max);
    rep.rho = value.rho;
    rep.tie = value.tie;
    fill_surfaces(rep, v[best]);
    rep.interior = feasibility_ring(v[best], 10.0 * tol, m_max);
    rep.refine_tolerance = tol;
    rep.evaluations = evals;
    return rep;
}

HelixParams solve_triple_point(const HelixParams& initial) {
    const OmegaWindow w = omega_window();
    if (!w.contains(initial.omega))
        throw DomainError("triple point initial omega outside the window");

    constexpr double kResidualTol = 1e-13;
    constexpr double kDamping = 0.5;
    constexpr int kMaxIter = 200;

    double omega = initial.omega;
    double u = initial.alpha * initial.alpha * omega * omega;

    auto residual = [](double w_, double u_, double& f1, double& f2) {
        f1 = -3.0 * u_ - 2.0 * std::cos(w_) + 2.0 * std::cos(2.0 * w_);
        f2 = -8.0 * u_ - 2.0 * std::cos(w_) + 2.0 * std::cos(3.0 * w_);
    };

    double f1 = 0.0, f2 = 0.0;
    bool converged = false;
    for (int it = 0; it < kMaxIter; ++it) {
        residual(omega, u, f1, f2);
        if (std::max(std::abs(f1), std::abs(f2)) < kResidualTol) {
            converged = true;
            break;
        }
        const double j11 = 2.0 * std::sin(omega) - 4.0 * std::sin(2.0 * omega);
        const double j21 = 2.0 * std::sin(omega) - 6.0 * std::sin(3.0 * omega);
        const double j12 = -3.0, j22 = -8.0;
        const double det = j11 * j22 - j12 * j21;
        if (std::abs(det) < 1e-14)
            throw NonConvergenceError("singular Jacobian in triple point solve");
        const double dw = (-f1 * j22 + f2 * j12) / det;
        const double du = (-j11 * f2 + j21 * f1) / det;
        omega += kDamping * dw;
        u += kDamping * du;
    }
    if (!converged)
        throw NonConvergenceError("triple point Newton iteration did not converge");

    // f1, f2 depend on omega only through cos(k*omega): fold into (0, 2*pi).
    omega = std::fmod(std::abs(omega), kTwoPi);
    if (std::cos(omega) > 1.0 - 1e-6 || u <= 0.0)
        throw DegenerateRootError("triple point iteration landed on the cos(omega)=1 root");
    return {omega, std::sqrt(u) / omega};
}

ConjectureResult conjecture_report(const ConjectureConfig& config) {
    ConjectureResult out;

    const GridScanResult grid =
        grid_scan(omega_window(), config.alpha_hi, config.n_omega, config.n_alpha,
                  config.m_max);
    OptimumReport rep = refine_local(grid.incumbent, config.refine_tol, config.m_max,
                                     config.eval_budget);
    rep.grid_n_omega = config.n_omega;
    rep.grid_n_alpha = config.n_alpha;
    rep.evaluations += grid.evaluations;

    const HelixParams triple = solve_triple_point({rep.omega, rep.alpha});
    const double triple_rho = steiner_ratio(triple, config.m_max).rho;

    // Sanity: the lattice incumbent must sit within one cell of the refined point.
    const double dw = (omega_window().hi - omega_window().lo) / (config.n_omega - 1);
    const double da = config.alpha_hi / config.n_alpha;
    if (std::abs(grid.incumbent.omega - rep.omega) > 1.5 * dw ||
        std::abs(grid.incumbent.alpha - rep.alpha) > 1.5 * da)
        throw CrossCheckError("cross-check failed: grid incumbent vs simplex refinement");

    if (std::abs(rep.omega - triple.omega) > 1e-8 ||
        std::abs(rep.alpha - triple.alpha) > 1e-8)
        throw CrossCheckError(
            "cross-check failed: simplex refinement vs triple point location");
    if (std::abs(rep.rho - triple_rho) > 1e-10)
        throw CrossCheckError("cross-check failed: simplex refinement vs triple point rho");

    const double refined_omega = rep.omega;
    const double refined_alpha = rep.alpha;
    const double refined_rho = rep.rho;

    // The routes agree; publish the algebraic root, which carries the
    // tighter residual (< 1e-13 on the squared step distances).
    rep.omega = triple.omega;
    rep.alpha = triple.alpha;
    rep.rho = triple_rho;
    rep.tie = steiner_ratio(triple, config.m_max).tie;
    fill_surfaces(rep, triple);
    rep.interior = feasibility_ring(triple, 10.0 * config.refine_tol, config.m_max);

    out.report = rep;
    out.triple_point = triple;
    out.triple_rho = triple_rho;
    out.closed_form_rho = (3.0 * std::sqrt(3.0) + std::sqrt(7.0)) / 10.0;

    std::ostringstream prov;
    prov.precision(17);
    prov << "grid " << config.n_omega << "x" << config.n_alpha << " incumbent rho "
         << grid.incumbent_rho << " at (" << grid.incumbent.omega << ", "
         << grid.incumbent.alpha << "); lattice local minima: " << grid.local_minima.size()
         << "; simplex refinement rho " << refined_rho << " at (" << refined_omega << ", "
         << refined_alpha << "); triple-point solve rho " << triple_rho << " at ("
         << triple.omega << ", " << triple.alpha << "); closed form (3*sqrt(3)+sqrt(7))/10 = "
         << out.closed_form_rho << "; |rho - closed form| = "
         << std::abs(rep.rho - out.closed_form_rho);
    out.provenance = prov.str();
    return out;
}

}  // namespace srf
