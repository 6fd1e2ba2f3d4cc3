#pragma once

// Direction-finding subproblem
//
//   min_d  max_i { (<grad f_i(x), d> + g_i(x + d) - g_i(x)) / alpha_i } + 1/2 ||d||^2
//
// solved through its dual over the unit simplex,
//
//   min_{lambda in simplex} omega(lambda),
//   omega(lambda) = 1/2 ||sum_i w_i grad f_i||^2 + sum_i w_i g_i(x) - M(x - sum_i w_i grad f_i),
//
// with w_i = lambda_i / alpha_i and M the Moreau envelope of sum_i w_i g_i.
// The primal solution is recovered as d = Prox(x - sum_i w_i grad f_i) - x.

#include "bbpg/common.hpp"
#include "bbpg/prox.hpp"

#include <cstdint>
#include <optional>

namespace bbpg {

struct SubproblemInput {
    Vector x;
    Matrix grads;  ///< m x n, row i = grad f_i(x)
    Vector g_at_x;
    Vector alphas;
    ProxKind kind;

    Eigen::Index m() const noexcept { return grads.rows(); }
    Eigen::Index n() const noexcept { return grads.cols(); }
    void validate() const;
};

struct FWConfig {
    double gap_tol = 1e-10;
    int max_iters = 2000;

    void validate() const;
};

struct DirectionResult {
    Vector d;
    Vector lambda;
    double dual_value = 0.0;  ///< -omega(lambda)
    double fw_gap = 0.0;
    Vector model_decrease;    ///< <grad f_i, d> + g_i(x + d) - g_i(x)
    int fw_iters = 0;
    std::uint64_t prox_evals = 0;
    bool converged = true;
};

/// Raised by frank_wolfe_solve when the gap stays above 100 * gap_tol.
/// Carries the best iterate found.
class DualFailure : public Error {
public:
    DualFailure(const std::string& what, DirectionResult best) : Error(what), best_(std::move(best)) {}
    const DirectionResult& best() const noexcept { return best_; }

private:
    DirectionResult best_;
};

/// omega and its gradient accept any nonnegative, nonzero lambda; the solver
/// only visits the simplex.
double omega_value(const SubproblemInput& inp, const Vector& lambda);
Vector omega_gradient(const SubproblemInput& inp, const Vector& lambda);
Vector recover_direction(const SubproblemInput& inp, const Vector& lambda);

/// Primal objective of the subproblem at d (max_i scaled model decrease
/// plus 1/2 ||d||^2). +infinity is reported as an EvaluationError.
double primal_value(const SubproblemInput& inp, const Vector& d);

/// Pairwise Frank-Wolfe on the simplex with exact segment search, starting from
/// `warm_start` or the uniform weights. For m = 2 the result is refined by
/// bisection on lambda_1 in [0, 1].
DirectionResult frank_wolfe_solve(const SubproblemInput& inp, const FWConfig& cfg,
                                  const std::optional<Vector>& warm_start = std::nullopt);

}  // namespace bbpg
