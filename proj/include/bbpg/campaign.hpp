#pragma once

// Benchmark campaigns: many starts, several algorithms, shared start points.

#include "bbpg/common.hpp"
#include "bbpg/problem.hpp"
#include "bbpg/solver.hpp"
#include "bbpg/test_problems.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace bbpg {

/// Either a registered problem key or a random quadratic family. A quadratic
/// campaign solves one instance, drawn from `instance_seed` or else from the
/// campaign seed; with `redraw_per_trial` every trial draws its own instance.
struct ProblemSource {
    std::string key;
    std::optional<QuadraticSpec> quadratic;
    std::optional<std::uint64_t> instance_seed;
    bool redraw_per_trial = false;
    /// Replaces the embedded Markowitz data when key is "Markowitz".
    std::optional<MarkowitzData> markowitz_data;

    std::string label() const;
};

/// Parses "JOS1a", "Markowitz", ... or "quadratic:n=10,xl=-2,xu=2" (optional
/// extra fields: seed=<u64>, redraw=1, l1=0|1, unbounded=1).
ProblemSource parse_problem_source(const std::string& text);

enum class StartSampling { Auto, UniformBox, UniformSimplex };

struct AlgorithmSpec {
    std::string label;
    SolverConfig config;
};

/// AlgorithmSpec from a CLI name, with the shared run limits applied.
AlgorithmSpec algorithm_spec(const std::string& name, double d_tol = 1e-6, int max_iters = 500);

struct ExperimentSpec {
    ProblemSource problem;
    std::vector<AlgorithmSpec> algorithms;
    int trials = 200;
    std::uint64_t seed = 0;
    StartSampling sampling = StartSampling::Auto;
    /// Sampling box for problems without bounds and without a simplex domain.
    double free_start_radius = 1.0;
    int jobs = 1;
    /// Keep the full SolveReport (with trace) of every run.
    bool keep_reports = false;
};

struct TrialRow {
    int trial = 0;
    std::size_t algo_index = 0;
    std::string algo;
    SolveStatus status = SolveStatus::MaxIters;
    int iters = 0;
    std::uint64_t feval = 0;
    double time_ms = 0.0;
    std::optional<double> stepsize;
    std::uint64_t x0_hash = 0;
    std::uint64_t instance_hash = 0;
    Vector x0;
    Vector final_x;
    Vector final_F;
    std::string message;
};

/// Hard failures are excluded from the means; max-iters runs are included
/// at their iteration count. `failures` counts both.
struct AlgorithmSummary {
    std::string algo;
    double iter_mean = 0.0;
    double feval_mean = 0.0;
    double time_ms_mean = 0.0;
    double stepsize_mean = 0.0;
    int failures = 0;
    int hard_failures = 0;
    int max_iter_runs = 0;
    int runs = 0;
};

struct ExperimentSummary {
    std::string problem;
    Eigen::Index n = 0;
    Eigen::Index m = 0;
    std::vector<AlgorithmSummary> algorithms;
    /// Sorted by (trial, algorithm index).
    std::vector<TrialRow> rows;
    /// Aligned with rows when keep_reports was set.
    std::vector<SolveReport> reports;

    bool any_hard_failure() const;
};

std::uint64_t hash_vector(const Vector& v);

/// Start point for one trial. Deterministic in (seed, trial).
Vector sample_start(const Problem& problem, StartSampling sampling, std::uint64_t seed, int trial,
                    double free_start_radius = 1.0);

/// Generator seed of the quadratic instance used in `trial`.
std::uint64_t quadratic_instance_seed(const ProblemSource& source, std::uint64_t seed, int trial);

/// Instance for one trial (same problem for named sources).
Problem trial_problem(const ProblemSource& source, std::uint64_t seed, int trial);

ExperimentSummary run_campaign(const ExperimentSpec& spec);

/// Aggregates rows per algorithm (used by run_campaign; exposed for checks).
std::vector<AlgorithmSummary> summarize(const std::vector<TrialRow>& rows, const std::vector<std::string>& algos);

/// Pairs (p, q) with p dominating q: p <= q + tol everywhere and p < q - tol
/// somewhere.
std::vector<std::pair<std::size_t, std::size_t>> dominated_pairs(const std::vector<Vector>& points, double tol = 1e-6);

}  // namespace bbpg
