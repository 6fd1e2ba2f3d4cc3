#include "bbpg/merit.hpp"

#include <algorithm>
#include <limits>

namespace bbpg {

double w_merit(const Problem& problem, const MeritQuery& q, const FWConfig& fw) {
    require(q.ell > 0.0, "w_merit: ell must be positive");
    require(q.alpha.size() == problem.m() && (q.alpha.array() > 0.0).all(),
            "w_merit: alpha must be a positive vector of length m");
    require(q.x.size() == problem.n(), "w_merit: x has wrong length");
    Evaluator eval(problem);
    SubproblemInput inp{q.x, eval.evaluate_jacobian(q.x), eval.nonsmooth_values(q.x), q.ell * q.alpha,
                        problem.nonsmooth().kind()};
    const DirectionResult r = frank_wolfe_solve(inp, fw);
    return q.ell * (-r.dual_value);
}

double u0_bruteforce(const Problem& problem, const Vector& x, const Vector& alpha, const MeritGrid& grid) {
    const Eigen::Index n = problem.n();
    if (n > 3) throw UnsupportedError("u0_bruteforce: only n <= 3 is supported");
    require(x.size() == n, "u0_bruteforce: x has wrong length");
    require(alpha.size() == problem.m() && (alpha.array() > 0.0).all(), "u0_bruteforce: alpha must be positive");
    require(static_cast<Eigen::Index>(grid.points.size()) == n && grid.lower.size() == n && grid.upper.size() == n,
            "u0_bruteforce: grid must describe every axis");
    for (int p : grid.points) require(p >= 2, "u0_bruteforce: need at least 2 points per axis");

    Evaluator eval(problem);
    const Vector Fx = eval.evaluate_F(x);
    double best = 0.0;  // y = x

    std::vector<int> idx(static_cast<std::size_t>(n), 0);
    Vector y(n);
    for (;;) {
        for (Eigen::Index j = 0; j < n; ++j) {
            const double frac =
                static_cast<double>(idx[static_cast<std::size_t>(j)]) / (grid.points[static_cast<std::size_t>(j)] - 1);
            y[j] = grid.lower[j] + frac * (grid.upper[j] - grid.lower[j]);
        }
        try {
            const Vector Fy = eval.evaluate_F(y);
            best = std::max(best, ((Fx - Fy).array() / alpha.array()).minCoeff());
        } catch (const EvaluationError&) {
            // outside the domain of g
        }
        Eigen::Index j = 0;
        while (j < n && ++idx[static_cast<std::size_t>(j)] == grid.points[static_cast<std::size_t>(j)]) {
            idx[static_cast<std::size_t>(j)] = 0;
            ++j;
        }
        if (j == n) break;
    }
    return best;
}

}  // namespace bbpg
