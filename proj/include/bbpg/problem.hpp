#pragma once

#include "bbpg/common.hpp"
#include "bbpg/prox.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace bbpg {

/// One smooth objective part f_i with optional curvature metadata.
struct SmoothComponent {
    std::function<double(const Vector&)> value;
    std::function<Vector(const Vector&)> gradient;
    std::optional<double> lipschitz;         ///< L_i
    std::optional<double> strong_convexity;  ///< mu_i
};

/// The nonsmooth parts g_1..g_m, exposed through one combined prox because
/// the direction solver needs Prox of sum_i w_i g_i, not each g_i alone.
class NonsmoothFamily {
public:
    NonsmoothFamily() = default;
    explicit NonsmoothFamily(ProxKind kind) : kind_(std::move(kind)) {}

    const ProxKind& kind() const noexcept { return kind_; }

    ExtendedReal value(Eigen::Index i, const Vector& x) const { return nonsmooth_value(kind_, i, x); }
    Vector prox(const Vector& w, const Vector& v) const { return combined_prox(kind_, w, v); }

private:
    ProxKind kind_ = ZeroKind{};
};

struct Bounds {
    Vector lower;
    Vector upper;
};

/// Multiobjective composite problem F_i = f_i + g_i. Immutable once built.
class Problem {
public:
    Problem(std::string name, Eigen::Index n, std::vector<SmoothComponent> smooth, NonsmoothFamily nonsmooth,
            std::optional<Bounds> bounds = std::nullopt);

    const std::string& name() const noexcept { return name_; }
    Eigen::Index n() const noexcept { return n_; }
    Eigen::Index m() const noexcept { return static_cast<Eigen::Index>(smooth_.size()); }
    const std::vector<SmoothComponent>& smooth() const noexcept { return smooth_; }
    const SmoothComponent& smooth(Eigen::Index i) const { return smooth_.at(static_cast<std::size_t>(i)); }
    const NonsmoothFamily& nonsmooth() const noexcept { return nonsmooth_; }
    const std::optional<Bounds>& bounds() const noexcept { return bounds_; }

    /// L_i for every objective, or nullopt if any is unknown.
    std::optional<Vector> lipschitz() const;
    /// mu_i for every objective, or nullopt if any is unknown.
    std::optional<Vector> strong_convexity() const;

private:
    std::string name_;
    Eigen::Index n_;
    std::vector<SmoothComponent> smooth_;
    NonsmoothFamily nonsmooth_;
    std::optional<Bounds> bounds_;
};

struct EvalCounters {
    std::uint64_t f_evals = 0;     ///< single f_i evaluations
    std::uint64_t grad_evals = 0;  ///< single gradient evaluations
    std::uint64_t prox_evals = 0;  ///< combined prox evaluations
    std::uint64_t F_evals = 0;     ///< full vector F evaluations

    EvalCounters& operator+=(const EvalCounters& o);
};

/// Smooth values, nonsmooth values and their sum at one point.
struct PointValues {
    Vector f;
    Vector g;
    Vector F;
};

/// Evaluates a problem while counting calls. One instance per solver run.
class Evaluator {
public:
    explicit Evaluator(const Problem& problem) : problem_(&problem) {}

    const Problem& problem() const noexcept { return *problem_; }
    const EvalCounters& counters() const noexcept { return counters_; }
    EvalCounters& counters() noexcept { return counters_; }

    /// [f_i(x) + g_i(x)]_i. Counts one F evaluation and m f evaluations.
    Vector evaluate_F(const Vector& x);
    /// As evaluate_F, keeping the split into f and g.
    PointValues evaluate(const Vector& x);
    /// Rows are gradients of f_i. Counts m gradient evaluations.
    Matrix evaluate_jacobian(const Vector& x);
    /// g_i(x) for all i, uncounted (the nonsmooth parts are closed form).
    Vector nonsmooth_values(const Vector& x) const;

private:
    const Problem* problem_;
    EvalCounters counters_;
};

/// Relative error of the analytic Jacobian against central differences
/// with h = 1e-6 (1 + |x_j|). Returns the worst entry-wise error
/// |a - fd| / max(1, |a|, |fd|).
double jacobian_fd_error(const Problem& problem, const Vector& x);

}  // namespace bbpg
