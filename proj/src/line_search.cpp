#include "bbpg/line_search.hpp"

#include <algorithm>
#include <cmath>

namespace bbpg {

void LineSearchConfig::validate() const {
    require(sigma > 0.0 && sigma < 1.0, "LineSearchConfig: sigma must lie in (0, 1)");
    require(gamma > 0.0 && gamma < 1.0, "LineSearchConfig: gamma must lie in (0, 1)");
    require(max_backtracks >= 1, "LineSearchConfig: max_backtracks must be positive");
    require(rounding_slack >= 0.0, "LineSearchConfig: rounding_slack must be nonnegative");
}

Vector step_point(const Vector& x, const Vector& d, double t, const std::optional<Bounds>& bounds) {
    Vector y = x + t * d;
    if (bounds) y = y.cwiseMax(bounds->lower).cwiseMin(bounds->upper);
    return y;
}

double max_feasible_step(const Vector& x, const Vector& d, const std::optional<Bounds>& bounds) {
    require(x.size() == d.size(), "max_feasible_step: dimension mismatch");
    if (!bounds) return 1.0;
    require(bounds->lower.size() == x.size(), "max_feasible_step: bounds have wrong length");
    double t = 1.0;
    for (Eigen::Index j = 0; j < x.size(); ++j) {
        const double lo = bounds->lower[j];
        const double hi = bounds->upper[j];
        require(x[j] >= lo && x[j] <= hi, "max_feasible_step: x is outside the bounds at index " +
                                              std::to_string(j));
        if (d[j] > 0.0) {
            t = std::min(t, (hi - x[j]) / d[j]);
        } else if (d[j] < 0.0) {
            t = std::min(t, (lo - x[j]) / d[j]);
        }
    }
    return std::max(t, 0.0);
}

LineSearchResult armijo_search(Evaluator& eval, const Vector& x, const Vector& d, const Vector& F_at_x,
                               const Vector& rhs, const LineSearchConfig& cfg, double t_cap) {
    cfg.validate();
    const auto& problem = eval.problem();
    require(d.size() == x.size() && F_at_x.size() == problem.m() && rhs.size() == problem.m(),
            "armijo_search: dimension mismatch");
    require(t_cap > 0.0 && t_cap <= 1.0, "armijo_search: t_cap must lie in (0, 1]");
    require(d.squaredNorm() > 0.0, "armijo_search: zero direction");

    LineSearchResult res;
    double t = t_cap;
    for (int j = 0; j <= cfg.max_backtracks; ++j) {
        Vector y = step_point(x, d, t, problem.bounds());
        PointValues vals;
        bool accepted = false;
        try {
            vals = eval.evaluate(y);
            const Eigen::ArrayXd slack = cfg.rounding_slack * (F_at_x.array().abs() + vals.F.array().abs());
            accepted = ((vals.F - F_at_x).array() <= (t * cfg.sigma) * rhs.array() + slack).all();
        } catch (const EvaluationError&) {
            // A nonfinite trial value counts as a rejected step.
        }
        if (accepted) {
            res.t = t;
            res.x_new = std::move(y);
            res.values = std::move(vals);
            res.backtracks = j;
            return res;
        }
        if (j < cfg.max_backtracks) t *= cfg.gamma;
    }
    throw LineSearchFailure("armijo_search: no acceptable step after " + std::to_string(cfg.max_backtracks) +
                                " backtracks",
                            t);
}

}  // namespace bbpg
