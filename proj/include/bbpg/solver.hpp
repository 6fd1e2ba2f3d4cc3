#pragma once

#include "bbpg/bb_rule.hpp"
#include "bbpg/common.hpp"
#include "bbpg/dual_subproblem.hpp"
#include "bbpg/line_search.hpp"
#include "bbpg/problem.hpp"

#include <optional>
#include <string>
#include <vector>

namespace bbpg {

/// Outer algorithms. All share the direction subproblem; they differ in how
/// the per-objective scalars alpha_i are chosen and how the step is taken.
enum class Algorithm {
    PgmoLineSearch,  ///< alpha_i = ell, Armijo on max_i of the model decreases
    PgmoFixed,       ///< alpha_i = ell > L_max / 2, unit step
    Bbpgmo,          ///< Barzilai-Borwein alpha_i, Armijo per objective
    PgmoSeparate,    ///< alpha_i = L_i, unit step
    PgmoStrong,      ///< alpha_i = mu_i, Armijo per objective
    AdaptiveBbpgmo,  ///< Barzilai-Borwein alpha_i inflated by tau until the quadratic bound holds, unit step
};

std::string algorithm_name(Algorithm a);
/// Accepts the CLI names: pgmo_ls, pgmo_fixed, bbpgmo, pgmo_L (or pgmo_separate), pgmo_mu, abbpgmo.
Algorithm parse_algorithm(const std::string& name);

struct SolverConfig {
    Algorithm algorithm = Algorithm::Bbpgmo;
    /// Constant alpha for the PGMO variants. Defaults: 1 for pgmo_ls, L_max for pgmo_fixed.
    std::optional<double> ell;
    double tau = 2.0;
    BBConfig bb;
    LineSearchConfig ls;
    FWConfig fw;
    double d_tol = 1e-6;
    int max_iters = 500;
    double x_minus_offset = 1e-4;
    bool record_iterates = false;
};

/// Error marks a run that raised an unexpected library error (recorded by
/// pareto_sweep instead of aborting the sweep).
enum class SolveStatus { CriticalPoint, MaxIters, LineSearchFailure, DualFailure, Error };

std::string status_name(SolveStatus s);

/// One accepted outer iteration k (x^k -> x^{k+1}).
struct IterationRecord {
    double d_norm = 0.0;
    double t = 0.0;
    double t_cap = 1.0;
    int backtracks = 0;
    Vector alphas;
    Vector lambda;
    Vector model_decrease;
    Vector armijo_rhs;  ///< right-hand side used by the line search (empty for unit steps)
    double fw_gap = 0.0;
    Vector F_before;
    Vector F;  ///< F(x^{k+1})
    std::vector<int> inflations;  ///< adaptive mode: tau-inflations per objective
    int repeat_rounds = 0;        ///< adaptive mode: re-solves of the subproblem
    bool dual_warning = false;
    double wall_ms = 0.0;
    Vector x;  ///< x^{k+1}, only when record_iterates is set
};

struct SolveReport {
    SolveStatus status = SolveStatus::MaxIters;
    Vector x0;
    bool projected_start = false;
    Vector final_x;
    Vector final_F;
    int iters = 0;
    EvalCounters counters;
    std::vector<IterationRecord> trace;
    /// Direction computed at final_x (the one that stopped the run, if any).
    std::optional<DirectionResult> final_direction;
    Vector final_alphas;
    int dual_warnings = 0;
    bool stalled_at_bound = false;
    std::string message;
    double total_ms = 0.0;

    /// F evaluations excluding the one at the start point.
    std::uint64_t feval() const noexcept { return counters.F_evals > 0 ? counters.F_evals - 1 : 0; }
    /// Mean accepted stepsize, or nullopt without iterations.
    std::optional<double> mean_stepsize() const;
    bool hard_failure() const noexcept {
        return status == SolveStatus::LineSearchFailure || status == SolveStatus::DualFailure ||
               status == SolveStatus::Error;
    }
};

/// Checks algorithm requirements against the problem (known L_i / mu_i,
/// ell > L_max / 2, tau > 1). Throws InputError.
void validate_config(const Problem& problem, const SolverConfig& cfg);

SolveReport solve(const Problem& problem, const Vector& x0, const SolverConfig& cfg);

/// Independent solves from each start, in input order. Failures are recorded
/// per report. jobs <= 1 runs sequentially.
std::vector<SolveReport> pareto_sweep(const Problem& problem, const std::vector<Vector>& starts,
                                      const SolverConfig& cfg, int jobs = 1);

}  // namespace bbpg
