#pragma once

// Invariant checks over solver traces and the self-check suite behind
// `bench verify`.

#include "bbpg/problem.hpp"
#include "bbpg/solver.hpp"

#include <string>
#include <vector>

namespace bbpg {

/// Iterations where some model_decrease_i > -alpha_i ||d||^2 + tol.
int descent_violations(const SolveReport& rep, double tol = 1e-8);

/// Iterations where two objectives with lambda_i >= lambda_floor have
/// model_decrease_i / alpha_i differing by more than max(1e-6, 10 fw_gap).
int equal_descent_violations(const SolveReport& rep, double lambda_floor = 1e-6);

/// Armijo iterations with t < min{1, min_i 2 gamma (1 - sigma) alpha_i / L_i} - 1e-12.
/// Returns 0 when some L_i is unknown.
int stepsize_floor_violations(const SolveReport& rep, const Problem& problem, const LineSearchConfig& ls);

/// Adaptive iterations with some alpha_i >= tau L_i, or more than
/// ceil(log_tau(L_i / alpha_min)) + 1 inflations of objective i.
/// Objectives with L_i < alpha_min are skipped.
int adaptive_bound_violations(const SolveReport& rep, const Problem& problem, double tau, double alpha_min);

struct CheckResult {
    std::string name;
    bool passed = false;
    std::string detail;
};

std::vector<CheckResult> run_invariant_suite(int jobs = 1);

}  // namespace bbpg
