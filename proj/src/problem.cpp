#include "bbpg/problem.hpp"

#include <algorithm>
#include <cmath>

namespace bbpg {

Problem::Problem(std::string name, Eigen::Index n, std::vector<SmoothComponent> smooth, NonsmoothFamily nonsmooth,
                 std::optional<Bounds> bounds)
    : name_(std::move(name)), n_(n), smooth_(std::move(smooth)), nonsmooth_(std::move(nonsmooth)),
      bounds_(std::move(bounds)) {
    require(n_ >= 1, "problem: n must be at least 1");
    require(!smooth_.empty(), "problem: need at least one objective");
    for (std::size_t i = 0; i < smooth_.size(); ++i) {
        const auto& c = smooth_[i];
        require(static_cast<bool>(c.value) && static_cast<bool>(c.gradient),
                "problem: objective " + std::to_string(i) + " lacks value or gradient");
        if (c.lipschitz) require(*c.lipschitz >= 0.0, "problem: negative Lipschitz constant");
        if (c.strong_convexity) require(*c.strong_convexity >= 0.0, "problem: negative strong convexity modulus");
        if (c.lipschitz && c.strong_convexity) {
            require(*c.strong_convexity <= *c.lipschitz, "problem: strong convexity modulus exceeds L");
        }
    }
    validate_kind(nonsmooth_.kind(), m(), n_);
    if (bounds_) {
        require(bounds_->lower.size() == n_ && bounds_->upper.size() == n_, "problem: bounds must have length n");
        require((bounds_->lower.array() < bounds_->upper.array()).all(), "problem: need lower < upper");
    }
}

std::optional<Vector> Problem::lipschitz() const {
    Vector out(m());
    for (Eigen::Index i = 0; i < m(); ++i) {
        if (!smooth(i).lipschitz) return std::nullopt;
        out[i] = *smooth(i).lipschitz;
    }
    return out;
}

std::optional<Vector> Problem::strong_convexity() const {
    Vector out(m());
    for (Eigen::Index i = 0; i < m(); ++i) {
        if (!smooth(i).strong_convexity) return std::nullopt;
        out[i] = *smooth(i).strong_convexity;
    }
    return out;
}

EvalCounters& EvalCounters::operator+=(const EvalCounters& o) {
    f_evals += o.f_evals;
    grad_evals += o.grad_evals;
    prox_evals += o.prox_evals;
    F_evals += o.F_evals;
    return *this;
}

PointValues Evaluator::evaluate(const Vector& x) {
    const auto& p = *problem_;
    require(x.size() == p.n(), "evaluate_F: point has length " + std::to_string(x.size()) + ", expected " +
                                   std::to_string(p.n()));
    counters_.F_evals += 1;
    counters_.f_evals += static_cast<std::uint64_t>(p.m());
    PointValues out{Vector(p.m()), Vector(p.m()), Vector(p.m())};
    for (Eigen::Index i = 0; i < p.m(); ++i) {
        const double fi = p.smooth(i).value(x);
        if (!std::isfinite(fi)) {
            throw EvaluationError("smooth part of objective " + std::to_string(i) + " is not finite", i);
        }
        const ExtendedReal gi = p.nonsmooth().value(i, x);
        if (gi.is_infinite()) {
            throw EvaluationError("nonsmooth part of objective " + std::to_string(i) + " is +infinity", i);
        }
        out.f[i] = fi;
        out.g[i] = gi.value();
        out.F[i] = fi + out.g[i];
    }
    return out;
}

Vector Evaluator::evaluate_F(const Vector& x) { return evaluate(x).F; }

Matrix Evaluator::evaluate_jacobian(const Vector& x) {
    const auto& p = *problem_;
    require(x.size() == p.n(), "evaluate_jacobian: dimension mismatch");
    Matrix J(p.m(), p.n());
    for (Eigen::Index i = 0; i < p.m(); ++i) {
        const Vector gi = p.smooth(i).gradient(x);
        require(gi.size() == p.n(), "evaluate_jacobian: gradient of objective " + std::to_string(i) +
                                        " has wrong length");
        if (!gi.allFinite()) {
            throw EvaluationError("gradient of objective " + std::to_string(i) + " is not finite", i);
        }
        J.row(i) = gi.transpose();
    }
    counters_.grad_evals += static_cast<std::uint64_t>(p.m());
    return J;
}

Vector Evaluator::nonsmooth_values(const Vector& x) const {
    const auto& p = *problem_;
    Vector g(p.m());
    for (Eigen::Index i = 0; i < p.m(); ++i) {
        const ExtendedReal gi = p.nonsmooth().value(i, x);
        if (gi.is_infinite()) {
            throw EvaluationError("nonsmooth part of objective " + std::to_string(i) + " is +infinity", i);
        }
        g[i] = gi.value();
    }
    return g;
}

double jacobian_fd_error(const Problem& problem, const Vector& x) {
    double worst = 0.0;
    for (Eigen::Index i = 0; i < problem.m(); ++i) {
        const auto& c = problem.smooth(i);
        const Vector grad = c.gradient(x);
        Vector xp = x;
        for (Eigen::Index j = 0; j < x.size(); ++j) {
            const double h = 1e-6 * (1.0 + std::abs(x[j]));
            xp[j] = x[j] + h;
            const double fp = c.value(xp);
            xp[j] = x[j] - h;
            const double fm = c.value(xp);
            xp[j] = x[j];
            const double fd = (fp - fm) / (2.0 * h);
            const double scale = std::max({1.0, std::abs(grad[j]), std::abs(fd)});
            worst = std::max(worst, std::abs(grad[j] - fd) / scale);
        }
    }
    return worst;
}

}  // namespace bbpg
