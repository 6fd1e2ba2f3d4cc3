#include "bbpg/solver.hpp"

#include "parallel.hpp"

#include <chrono>
#include <cmath>
#include <limits>

namespace bbpg {

std::string algorithm_name(Algorithm a) {
    switch (a) {
        case Algorithm::PgmoLineSearch: return "pgmo_ls";
        case Algorithm::PgmoFixed: return "pgmo_fixed";
        case Algorithm::Bbpgmo: return "bbpgmo";
        case Algorithm::PgmoSeparate: return "pgmo_L";
        case Algorithm::PgmoStrong: return "pgmo_mu";
        case Algorithm::AdaptiveBbpgmo: return "abbpgmo";
    }
    return "unknown";
}

Algorithm parse_algorithm(const std::string& name) {
    if (name == "pgmo_ls" || name == "pgmo") return Algorithm::PgmoLineSearch;
    if (name == "pgmo_fixed") return Algorithm::PgmoFixed;
    if (name == "bbpgmo") return Algorithm::Bbpgmo;
    if (name == "pgmo_L" || name == "pgmo_separate") return Algorithm::PgmoSeparate;
    if (name == "pgmo_mu") return Algorithm::PgmoStrong;
    if (name == "abbpgmo") return Algorithm::AdaptiveBbpgmo;
    throw InputError("unknown algorithm '" + name +
                     "' (expected pgmo_ls, pgmo_fixed, bbpgmo, pgmo_L, pgmo_mu or abbpgmo)");
}

std::string status_name(SolveStatus s) {
    switch (s) {
        case SolveStatus::CriticalPoint: return "critical_point";
        case SolveStatus::MaxIters: return "max_iters";
        case SolveStatus::LineSearchFailure: return "line_search_failure";
        case SolveStatus::DualFailure: return "dual_failure";
        case SolveStatus::Error: return "error";
    }
    return "unknown";
}

std::optional<double> SolveReport::mean_stepsize() const {
    if (trace.empty()) return std::nullopt;
    double sum = 0.0;
    for (const auto& r : trace) sum += r.t;
    return sum / static_cast<double>(trace.size());
}

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

bool uses_bb(Algorithm a) { return a == Algorithm::Bbpgmo || a == Algorithm::AdaptiveBbpgmo; }

bool uses_armijo(Algorithm a) {
    return a == Algorithm::PgmoLineSearch || a == Algorithm::Bbpgmo || a == Algorithm::PgmoStrong;
}

double default_ell(const Problem& problem, const SolverConfig& cfg) {
    if (cfg.ell) return *cfg.ell;
    if (cfg.algorithm == Algorithm::PgmoFixed) {
        const auto L = problem.lipschitz();
        if (!L) throw InputError("pgmo_fixed needs known Lipschitz constants for every objective");
        return L->maxCoeff();
    }
    return 1.0;
}

// Scalars that stay constant through the run, for the non-BB modes.
Vector constant_alphas(const Problem& problem, const SolverConfig& cfg) {
    const Eigen::Index m = problem.m();
    switch (cfg.algorithm) {
        case Algorithm::PgmoLineSearch:
        case Algorithm::PgmoFixed: return Vector::Constant(m, default_ell(problem, cfg));
        case Algorithm::PgmoSeparate: {
            // A zero L_i (linear objective) admits any positive scalar; alpha_min is used.
            return problem.lipschitz()->cwiseMax(cfg.bb.alpha_min);
        }
        case Algorithm::PgmoStrong: return *problem.strong_convexity();
        default: return Vector();
    }
}

struct DirectionOutcome {
    DirectionResult dir;
    bool warning = false;
    bool failed = false;
};

bool satisfies_descent_certificate(const DirectionResult& r, const Vector& alphas) {
    const double dd = r.d.squaredNorm();
    return ((r.model_decrease.array() + alphas.array() * dd) <= 1e-8).all();
}

DirectionOutcome find_direction(const SubproblemInput& inp, const FWConfig& fw, EvalCounters& counters,
                                const std::optional<Vector>& warm = std::nullopt) {
    DirectionOutcome out;
    try {
        out.dir = frank_wolfe_solve(inp, fw, warm);
    } catch (const DualFailure& e) {
        out.dir = e.best();
        out.warning = true;
        out.failed = !satisfies_descent_certificate(out.dir, inp.alphas);
    }
    counters.prox_evals += out.dir.prox_evals;
    return out;
}

}  // namespace

void validate_config(const Problem& problem, const SolverConfig& cfg) {
    cfg.bb.validate();
    cfg.ls.validate();
    cfg.fw.validate();
    require(cfg.d_tol > 0.0, "solver: d_tol must be positive");
    require(cfg.max_iters >= 0, "solver: max_iters must be nonnegative");
    require(cfg.x_minus_offset != 0.0, "solver: x_minus_offset must be nonzero");
    switch (cfg.algorithm) {
        case Algorithm::PgmoLineSearch:
            require(default_ell(problem, cfg) > 0.0, "pgmo_ls: ell must be positive");
            break;
        case Algorithm::PgmoFixed: {
            const auto L = problem.lipschitz();
            require(L.has_value(), "pgmo_fixed needs known Lipschitz constants for every objective");
            require(default_ell(problem, cfg) > L->maxCoeff() / 2.0, "pgmo_fixed: need ell > L_max / 2");
            break;
        }
        case Algorithm::PgmoSeparate:
            require(problem.lipschitz().has_value(), "pgmo_L needs known Lipschitz constants for every objective");
            break;
        case Algorithm::PgmoStrong: {
            const auto mu = problem.strong_convexity();
            require(mu.has_value() && (mu->array() > 0.0).all(),
                    "pgmo_mu needs positive strong convexity moduli for every objective");
            break;
        }
        case Algorithm::AdaptiveBbpgmo: require(cfg.tau > 1.0, "abbpgmo: tau must exceed 1"); break;
        case Algorithm::Bbpgmo: break;
    }
}

SolveReport solve(const Problem& problem, const Vector& x0, const SolverConfig& cfg) {
    require(x0.size() == problem.n(), "solve: start point has wrong length");
    validate_config(problem, cfg);
    const auto run_start = Clock::now();
    const ProxKind& kind = problem.nonsmooth().kind();
    const Algorithm algo = cfg.algorithm;

    SolveReport rep;
    Evaluator eval(problem);

    Vector x = x0;
    if (has_indicator(kind)) {
        bool feasible = true;
        for (Eigen::Index i = 0; i < problem.m() && feasible; ++i) {
            feasible = nonsmooth_value(kind, i, x).is_finite();
        }
        if (!feasible) {
            x = project_to_domain(kind, x);
            rep.projected_start = true;
        }
    }
    if (problem.bounds()) {
        const Vector clamped = x.cwiseMax(problem.bounds()->lower).cwiseMin(problem.bounds()->upper);
        if (clamped != x) {
            x = clamped;
            rep.projected_start = true;
        }
    }
    rep.x0 = x;

    PointValues vals = eval.evaluate(x);
    Matrix grads = eval.evaluate_jacobian(x);

    BBMemory mem;
    if (uses_bb(algo)) {
        mem.prev_x = x - Vector::Constant(x.size(), cfg.x_minus_offset);
        mem.prev_grads = eval.evaluate_jacobian(mem.prev_x);
    }
    const Vector fixed_alphas = constant_alphas(problem, cfg);

    auto finish = [&](SolveStatus status) {
        rep.status = status;
        rep.final_x = x;
        rep.final_F = vals.F;
        rep.counters = eval.counters();
        rep.total_ms = ms_since(run_start);
        return rep;
    };

    for (;;) {
        const auto iter_start = Clock::now();
        Vector alphas = uses_bb(algo) ? compute_alphas(mem, x, grads, cfg.bb) : fixed_alphas;
        SubproblemInput inp{x, grads, vals.g, alphas, kind};
        DirectionOutcome found = find_direction(inp, cfg.fw, eval.counters());
        rep.final_direction = found.dir;
        rep.final_alphas = alphas;
        if (found.warning) ++rep.dual_warnings;
        if (found.failed) {
            rep.message = "dual subproblem failed and its best iterate is not a descent direction";
            return finish(SolveStatus::DualFailure);
        }
        const double d_norm = found.dir.d.norm();
        if (d_norm <= cfg.d_tol) return finish(SolveStatus::CriticalPoint);
        if (rep.iters >= cfg.max_iters) return finish(SolveStatus::MaxIters);

        IterationRecord rec;
        rec.F_before = vals.F;
        rec.dual_warning = found.warning;
        Vector x_new;
        PointValues vals_new;

        if (uses_armijo(algo)) {
            const double cap = max_feasible_step(x, found.dir.d, problem.bounds());
            if (!(cap > 0.0)) {
                rep.stalled_at_bound = true;
                rep.message = "direction points out of the bounds at the current iterate";
                return finish(SolveStatus::CriticalPoint);
            }
            Vector rhs = found.dir.model_decrease;
            if (algo == Algorithm::PgmoLineSearch) rhs.setConstant(found.dir.model_decrease.maxCoeff());
            try {
                LineSearchResult ls = armijo_search(eval, x, found.dir.d, vals.F, rhs, cfg.ls, cap);
                rec.t = ls.t;
                rec.backtracks = ls.backtracks;
                x_new = std::move(ls.x_new);
                vals_new = std::move(ls.values);
            } catch (const LineSearchFailure& e) {
                rep.message = e.what();
                return finish(SolveStatus::LineSearchFailure);
            }
            rec.t_cap = cap;
            rec.armijo_rhs = rhs;
        } else if (algo == Algorithm::AdaptiveBbpgmo) {
            const Eigen::Index m = problem.m();
            rec.inflations.assign(static_cast<std::size_t>(m), 0);
            for (;;) {
                const double cap = max_feasible_step(x, found.dir.d, problem.bounds());
                if (!(cap > 0.0)) {
                    rep.stalled_at_bound = true;
                    rep.message = "direction points out of the bounds at the current iterate";
                    return finish(SolveStatus::CriticalPoint);
                }
                x_new = step_point(x, found.dir.d, cap, problem.bounds());
                vals_new = eval.evaluate(x_new);
                rec.t = cap;
                rec.t_cap = cap;
                const Vector step = x_new - x;
                const double step_sq = step.squaredNorm();
                const Vector linear = grads * step;
                bool all_hold = true;
                for (Eigen::Index i = 0; i < m; ++i) {
                    const double slack = 4.0 * std::numeric_limits<double>::epsilon() *
                                         (std::abs(vals.f[i]) + std::abs(vals_new.f[i]));
                    const double excess = vals_new.f[i] - vals.f[i] - linear[i] - 0.5 * alphas[i] * step_sq;
                    if (excess > slack) {
                        alphas[i] *= cfg.tau;
                        ++rec.inflations[static_cast<std::size_t>(i)];
                        all_hold = false;
                    }
                }
                if (all_hold) break;
                if (++rec.repeat_rounds > 1000) {
                    rep.message = "adaptive scalar inflation did not terminate";
                    return finish(SolveStatus::LineSearchFailure);
                }
                inp.alphas = alphas;
                found = find_direction(inp, cfg.fw, eval.counters(), found.dir.lambda);
                if (found.warning) {
                    ++rep.dual_warnings;
                    rec.dual_warning = true;
                }
                if (found.failed) {
                    rep.message = "dual subproblem failed and its best iterate is not a descent direction";
                    return finish(SolveStatus::DualFailure);
                }
                if (found.dir.d.squaredNorm() == 0.0) break;
            }
        } else {
            const double cap = max_feasible_step(x, found.dir.d, problem.bounds());
            if (!(cap > 0.0)) {
                rep.stalled_at_bound = true;
                rep.message = "direction points out of the bounds at the current iterate";
                return finish(SolveStatus::CriticalPoint);
            }
            x_new = step_point(x, found.dir.d, cap, problem.bounds());
            vals_new = eval.evaluate(x_new);
            rec.t = cap;
            rec.t_cap = cap;
        }

        rec.d_norm = found.dir.d.norm();
        rec.alphas = alphas;
        rec.lambda = found.dir.lambda;
        rec.model_decrease = found.dir.model_decrease;
        rec.fw_gap = found.dir.fw_gap;
        rec.F = vals_new.F;
        if (cfg.record_iterates) rec.x = x_new;

        if (uses_bb(algo)) {
            mem.prev_x = x;
            mem.prev_grads = grads;
        }
        x = std::move(x_new);
        vals = std::move(vals_new);
        grads = eval.evaluate_jacobian(x);
        if (uses_bb(algo) && (x - mem.prev_x).squaredNorm() == 0.0) {
            // The step vanished in floating point; nothing more can be gained.
            rec.wall_ms = ms_since(iter_start);
            rep.trace.push_back(std::move(rec));
            ++rep.iters;
            rep.message = "step below floating-point resolution";
            return finish(SolveStatus::CriticalPoint);
        }
        rec.wall_ms = ms_since(iter_start);
        rep.trace.push_back(std::move(rec));
        ++rep.iters;
    }
}

std::vector<SolveReport> pareto_sweep(const Problem& problem, const std::vector<Vector>& starts,
                                      const SolverConfig& cfg, int jobs) {
    require(!starts.empty(), "pareto_sweep: need at least one start point");
    std::vector<SolveReport> out(starts.size());
    detail::parallel_for(starts.size(), jobs, [&](std::size_t i) {
        try {
            out[i] = solve(problem, starts[i], cfg);
        } catch (const Error& e) {
            SolveReport failed;
            failed.status = SolveStatus::Error;
            failed.x0 = starts[i];
            failed.message = e.what();
            out[i] = std::move(failed);
        }
    });
    return out;
}

}  // namespace bbpg
