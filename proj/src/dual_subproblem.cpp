#include "bbpg/dual_subproblem.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace bbpg {

void SubproblemInput::validate() const {
    require(grads.rows() >= 1, "subproblem: need at least one objective");
    require(x.size() == grads.cols(), "subproblem: x and gradients differ in dimension");
    require(g_at_x.size() == grads.rows(), "subproblem: g_at_x must have length m");
    require(alphas.size() == grads.rows(), "subproblem: alphas must have length m");
    require((alphas.array() > 0.0).all() && alphas.allFinite(), "subproblem: alphas must be positive");
    require(g_at_x.allFinite(), "subproblem: g(x) must be finite");
}

void FWConfig::validate() const {
    require(gap_tol > 0.0, "FWConfig: gap_tol must be positive");
    require(max_iters >= 1, "FWConfig: max_iters must be positive");
}

namespace {

// Everything the dual needs at one lambda.
struct DualPoint {
    Vector lambda;
    Vector d;
    Vector model_decrease;
    Vector grad;  // gradient of omega
    double omega = 0.0;
};

class DualOracle {
public:
    explicit DualOracle(const SubproblemInput& inp) : inp_(inp) {}

    DualPoint at(const Vector& lambda) {
        const Eigen::Index m = inp_.m();
        DualPoint out;
        out.lambda = lambda;
        const Vector w = lambda.cwiseQuotient(inp_.alphas);
        const Vector a = inp_.grads.transpose() * w;
        const Vector v = inp_.x - a;
        const Vector p = combined_prox(inp_.kind, w, v);
        ++prox_evals_;
        out.d = p - inp_.x;

        Vector g_p(m);
        for (Eigen::Index i = 0; i < m; ++i) {
            const ExtendedReal gi = nonsmooth_value(inp_.kind, i, p);
            if (gi.is_infinite()) {
                throw EvaluationError("dual: nonsmooth part is +infinity at the prox point", i);
            }
            g_p[i] = gi.value();
        }
        const double envelope = w.dot(g_p) + 0.5 * (p - v).squaredNorm();
        out.omega = 0.5 * a.squaredNorm() + w.dot(inp_.g_at_x) - envelope;
        out.model_decrease = inp_.grads * out.d + g_p - inp_.g_at_x;
        out.grad = -out.model_decrease.cwiseQuotient(inp_.alphas);
        return out;
    }

    std::uint64_t prox_evals() const noexcept { return prox_evals_; }

private:
    const SubproblemInput& inp_;
    std::uint64_t prox_evals_ = 0;
};

double fw_gap(const DualPoint& pt) {
    Eigen::Index j = 0;
    pt.grad.minCoeff(&j);
    return std::max(0.0, pt.grad.dot(pt.lambda) - pt.grad[j]);
}

// Minimizes the convex C^1 function phi(eta) = omega(lambda + eta dir) on
// [0, eta_max] by bisection on phi'.
DualPoint segment_search(DualOracle& oracle, const DualPoint& from, const Vector& dir, double eta_max) {
    auto point_at = [&](double eta) {
        Vector l = from.lambda + eta * dir;
        l = l.cwiseMax(0.0);
        return oracle.at(l / l.sum());
    };
    DualPoint hi_pt = point_at(eta_max);
    double hi_slope = hi_pt.grad.dot(dir);
    if (hi_slope <= 0.0) return hi_pt;
    DualPoint lo_pt = from;
    double lo_slope = from.grad.dot(dir);
    double lo = 0.0, hi = eta_max;
    for (int it = 0; it < 200 && hi - lo > 1e-16 * eta_max; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        DualPoint mid_pt = point_at(mid);
        const double slope = mid_pt.grad.dot(dir);
        if (slope > 0.0) {
            hi = mid;
            hi_pt = std::move(mid_pt);
            hi_slope = slope;
        } else {
            lo = mid;
            lo_pt = std::move(mid_pt);
            lo_slope = slope;
            if (slope == 0.0) break;
        }
    }
    return -lo_slope <= hi_slope ? lo_pt : hi_pt;
}

// m = 2: h(s) = d/ds omega(s, 1 - s) is nondecreasing; bisection for its root.
DualPoint bisect_two(DualOracle& oracle) {
    auto point_at = [&](double s) {
        Vector l(2);
        l << s, 1.0 - s;
        return oracle.at(l);
    };
    auto slope = [](const DualPoint& pt) { return pt.grad[0] - pt.grad[1]; };
    DualPoint p0 = point_at(0.0);
    if (slope(p0) >= 0.0) return p0;
    DualPoint p1 = point_at(1.0);
    if (slope(p1) <= 0.0) return p1;
    double lo = 0.0, hi = 1.0;
    DualPoint best = fw_gap(p0) <= fw_gap(p1) ? p0 : p1;
    double best_gap = fw_gap(best);
    for (int it = 0; it < 200 && hi - lo > 1e-17; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        DualPoint mid_pt = point_at(mid);
        const double h = slope(mid_pt);
        if (h > 0.0) {
            hi = mid;
        } else {
            lo = mid;
        }
        const double g = fw_gap(mid_pt);
        if (g < best_gap) {
            best_gap = g;
            best = std::move(mid_pt);
        }
        if (h == 0.0) break;
    }
    return best;
}

DirectionResult to_result(const DualPoint& pt, double gap, int iters, std::uint64_t prox_evals) {
    DirectionResult r;
    r.d = pt.d;
    r.lambda = pt.lambda;
    r.dual_value = -pt.omega;
    r.fw_gap = gap;
    r.model_decrease = pt.model_decrease;
    r.fw_iters = iters;
    r.prox_evals = prox_evals;
    return r;
}

void check_nonnegative(const Vector& lambda, Eigen::Index m) {
    require(lambda.size() == m, "dual: lambda must have length m");
    require((lambda.array() >= 0.0).all() && lambda.allFinite() && lambda.sum() > 0.0,
            "dual: lambda must be nonnegative and nonzero");
}

void check_simplex(const Vector& lambda, Eigen::Index m) {
    require(lambda.size() == m, "dual: lambda must have length m");
    require((lambda.array() >= 0.0).all() && std::abs(lambda.sum() - 1.0) <= 1e-12,
            "dual: lambda must lie on the unit simplex");
}

}  // namespace

double omega_value(const SubproblemInput& inp, const Vector& lambda) {
    inp.validate();
    check_nonnegative(lambda, inp.m());
    DualOracle oracle(inp);
    return oracle.at(lambda).omega;
}

Vector omega_gradient(const SubproblemInput& inp, const Vector& lambda) {
    inp.validate();
    check_nonnegative(lambda, inp.m());
    DualOracle oracle(inp);
    return oracle.at(lambda).grad;
}

Vector recover_direction(const SubproblemInput& inp, const Vector& lambda) {
    inp.validate();
    check_simplex(lambda, inp.m());
    const Vector w = lambda.cwiseQuotient(inp.alphas);
    const Vector v = inp.x - inp.grads.transpose() * w;
    return combined_prox(inp.kind, w, v) - inp.x;
}

double primal_value(const SubproblemInput& inp, const Vector& d) {
    inp.validate();
    const Vector y = inp.x + d;
    double worst = -std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < inp.m(); ++i) {
        const ExtendedReal gi = nonsmooth_value(inp.kind, i, y);
        if (gi.is_infinite()) throw EvaluationError("primal_value: x + d outside the domain", i);
        const double md = inp.grads.row(i).dot(d) + gi.value() - inp.g_at_x[i];
        worst = std::max(worst, md / inp.alphas[i]);
    }
    return worst + 0.5 * d.squaredNorm();
}

DirectionResult frank_wolfe_solve(const SubproblemInput& inp, const FWConfig& cfg,
                                  const std::optional<Vector>& warm_start) {
    inp.validate();
    cfg.validate();
    const Eigen::Index m = inp.m();
    DualOracle oracle(inp);

    Vector lambda = Vector::Constant(m, 1.0 / static_cast<double>(m));
    if (warm_start) {
        check_simplex(*warm_start, m);
        lambda = *warm_start;
    }

    DualPoint cur = oracle.at(lambda);
    double cur_gap = fw_gap(cur);
    DualPoint best = cur;
    double gap = cur_gap;
    int iters = 0;
    while (cur_gap > cfg.gap_tol && iters < cfg.max_iters && m > 1) {
        // Pairwise step: move weight from the worst support vertex to the best vertex.
        Eigen::Index j = 0;
        cur.grad.minCoeff(&j);
        Eigen::Index a = -1;
        for (Eigen::Index i = 0; i < m; ++i) {
            if (cur.lambda[i] > 0.0 && (a < 0 || cur.grad[i] > cur.grad[a])) a = i;
        }
        if (a == j) break;
        Vector dir = Vector::Zero(m);
        dir[j] = 1.0;
        dir[a] = -1.0;
        DualPoint next = segment_search(oracle, cur, dir, cur.lambda[a]);
        ++iters;
        const bool stalled = next.lambda == cur.lambda;
        cur = std::move(next);
        cur_gap = fw_gap(cur);
        if (cur_gap < gap) {
            best = cur;
            gap = cur_gap;
        }
        if (stalled) break;
    }
    cur = std::move(best);

    if (m == 2) {
        DualPoint refined = bisect_two(oracle);
        const double refined_gap = fw_gap(refined);
        if (refined_gap < gap || (refined_gap == gap && refined.omega < cur.omega)) {
            cur = std::move(refined);
            gap = refined_gap;
        }
    }

    DirectionResult result = to_result(cur, gap, iters, oracle.prox_evals());
    if (gap > 100.0 * cfg.gap_tol) {
        result.converged = false;
        throw DualFailure("frank_wolfe_solve: dual gap " + std::to_string(gap) + " above tolerance",
                          std::move(result));
    }
    result.converged = gap <= cfg.gap_tol;
    return result;
}

}  // namespace bbpg
