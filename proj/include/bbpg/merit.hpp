#pragma once

#include "bbpg/common.hpp"
#include "bbpg/dual_subproblem.hpp"
#include "bbpg/problem.hpp"

#include <vector>

namespace bbpg {

struct MeritQuery {
    Vector x;
    Vector alpha;
    double ell = 1.0;
};

/// Regularized gap merit
///   w(x) = max_y min_i { (<grad f_i(x), x - y> + g_i(x) - g_i(y)) / alpha_i } - ell/2 ||x - y||^2,
/// evaluated as ell * (-optimal value of the direction subproblem with
/// scalars ell * alpha). Zero exactly at Pareto critical points.
double w_merit(const Problem& problem, const MeritQuery& q, const FWConfig& fw = {});

/// Axis-aligned grid for u0_bruteforce: `points[j]` samples per axis over
/// [lower_j, upper_j].
struct MeritGrid {
    std::vector<int> points;
    Vector lower;
    Vector upper;
};

/// Lower bound of u(x) = sup_y min_i (F_i(x) - F_i(y)) / alpha_i obtained by
/// maximizing over the grid nodes and x itself (so the result is >= 0).
/// Nodes outside the domain of g are skipped. Only n <= 3 is supported.
double u0_bruteforce(const Problem& problem, const Vector& x, const Vector& alpha, const MeritGrid& grid);

}  // namespace bbpg
