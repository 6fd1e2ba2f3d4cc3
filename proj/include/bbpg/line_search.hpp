#pragma once

#include "bbpg/common.hpp"
#include "bbpg/problem.hpp"

#include <limits>
#include <optional>

namespace bbpg {

struct LineSearchConfig {
    double sigma = 1e-4;
    double gamma = 0.5;
    int max_backtracks = 60;
    /// Relative tolerance for rounding in F: the test allows an excess of
    /// rounding_slack * (|F_i(x)| + |F_i(x + t d)|).
    double rounding_slack = 16.0 * std::numeric_limits<double>::epsilon();

    void validate() const;
};

struct LineSearchResult {
    double t = 1.0;
    Vector x_new;
    PointValues values;  ///< at x_new
    int backtracks = 0;
};

class LineSearchFailure : public Error {
public:
    LineSearchFailure(const std::string& what, double last_t) : Error(what), last_t_(last_t) {}
    double last_t() const noexcept { return last_t_; }

private:
    double last_t_;
};

/// x + t d, clamped onto the bounds when present so that rounding never
/// leaves the box.
Vector step_point(const Vector& x, const Vector& d, double t, const std::optional<Bounds>& bounds);

/// Largest t in [0, 1] with x + t d inside the bounds (1 if unbounded).
/// Throws InputError if x itself is outside the bounds.
double max_feasible_step(const Vector& x, const Vector& d, const std::optional<Bounds>& bounds);

/// Backtracking over t = t_cap * gamma^j until
///   F_i(x + t d) - F_i(x) <= t * sigma * rhs_i (+ rounding slack)   for every i.
/// Every trial point is evaluated through `eval` and therefore counted.
LineSearchResult armijo_search(Evaluator& eval, const Vector& x, const Vector& d, const Vector& F_at_x,
                               const Vector& rhs, const LineSearchConfig& cfg, double t_cap);

}  // namespace bbpg
