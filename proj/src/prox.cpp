#include "bbpg/prox.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

namespace bbpg {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void check_bounds(const Vector& lower, const Vector& upper) {
    require(lower.size() == upper.size(), "box bounds have different lengths");
    for (Eigen::Index j = 0; j < lower.size(); ++j) {
        require(lower[j] <= upper[j], "box bounds are not ordered at index " + std::to_string(j));
    }
}

bool in_box(const Vector& x, const Vector& lower, const Vector& upper) {
    for (Eigen::Index j = 0; j < x.size(); ++j) {
        const double slack = feasibility_tolerance * (1.0 + std::abs(lower[j]) + std::abs(upper[j]));
        if (x[j] < lower[j] - slack || x[j] > upper[j] + slack) return false;
    }
    return true;
}

bool in_simplex(const Vector& x) {
    if (x.minCoeff() < -feasibility_tolerance) return false;
    return std::abs(x.sum() - 1.0) <= feasibility_tolerance * (1.0 + static_cast<double>(x.size()));
}

}  // namespace

std::string kind_name(const ProxKind& kind) {
    return std::visit(overloaded{
                          [](const ZeroKind&) { return std::string("zero"); },
                          [](const WeightedL1&) { return std::string("weighted-l1"); },
                          [](const BoxIndicator&) { return std::string("box"); },
                          [](const SimplexIndicator&) { return std::string("simplex"); },
                          [](const WeightedL1InBox&) { return std::string("weighted-l1-in-box"); },
                      },
                      kind);
}

void validate_kind(const ProxKind& kind, Eigen::Index m, Eigen::Index n) {
    std::visit(overloaded{
                   [](const ZeroKind&) {},
                   [&](const WeightedL1& k) {
                       require(k.coeffs.size() == m, "weighted-l1: need one coefficient per objective");
                       require((k.coeffs.array() > 0.0).all(), "weighted-l1: coefficients must be positive");
                   },
                   [&](const BoxIndicator& k) {
                       require(k.lower.size() == n, "box: bounds must have length n");
                       check_bounds(k.lower, k.upper);
                   },
                   [](const SimplexIndicator&) {},
                   [&](const WeightedL1InBox& k) {
                       require(k.coeffs.size() == m, "weighted-l1-in-box: need one coefficient per objective");
                       require((k.coeffs.array() > 0.0).all(), "weighted-l1-in-box: coefficients must be positive");
                       require(k.lower.size() == n, "weighted-l1-in-box: bounds must have length n");
                       check_bounds(k.lower, k.upper);
                   },
               },
               kind);
}

Vector soft_threshold(const Vector& v, double kappa) {
    require(kappa >= 0.0, "soft_threshold: kappa must be nonnegative");
    Vector out(v.size());
    for (Eigen::Index j = 0; j < v.size(); ++j) {
        const double a = std::abs(v[j]) - kappa;
        out[j] = a > 0.0 ? std::copysign(a, v[j]) : 0.0;
    }
    return out;
}

Vector project_box(const Vector& v, const Vector& lower, const Vector& upper) {
    require(v.size() == lower.size(), "project_box: dimension mismatch");
    check_bounds(lower, upper);
    return v.cwiseMax(lower).cwiseMin(upper);
}

Vector project_simplex(const Vector& v) {
    const Eigen::Index n = v.size();
    require(n >= 1, "project_simplex: empty vector");
    std::vector<double> u(v.data(), v.data() + n);
    std::sort(u.begin(), u.end(), std::greater<>());
    // Largest k with u_k - (sum_{j<=k} u_j - 1)/k > 0 fixes the threshold.
    double cumsum = 0.0;
    double theta = 0.0;
    for (Eigen::Index k = 0; k < n; ++k) {
        cumsum += u[static_cast<std::size_t>(k)];
        const double t = (cumsum - 1.0) / static_cast<double>(k + 1);
        if (u[static_cast<std::size_t>(k)] - t > 0.0) theta = t;
    }
    return (v.array() - theta).cwiseMax(0.0).matrix();
}

Vector combined_prox(const ProxKind& kind, const Vector& w, const Vector& v) {
    require((w.array() >= 0.0).all(), "combined_prox: weights must be nonnegative");
    const double total = w.sum();
    return std::visit(overloaded{
                          [&](const ZeroKind&) -> Vector { return v; },
                          [&](const WeightedL1& k) -> Vector {
                              require(k.coeffs.size() == w.size(), "combined_prox: kind/weight mismatch");
                              return soft_threshold(v, w.dot(k.coeffs));
                          },
                          [&](const BoxIndicator& k) -> Vector {
                              if (total <= 0.0) return v;
                              return project_box(v, k.lower, k.upper);
                          },
                          [&](const SimplexIndicator&) -> Vector {
                              if (total <= 0.0) return v;
                              return project_simplex(v);
                          },
                          [&](const WeightedL1InBox& k) -> Vector {
                              require(k.coeffs.size() == w.size(), "combined_prox: kind/weight mismatch");
                              if (total <= 0.0) return v;
                              // Separable: the 1-D prox of c|t| + I[a,b] is the clamp of the shrinkage.
                              return soft_threshold(v, w.dot(k.coeffs)).cwiseMax(k.lower).cwiseMin(k.upper);
                          },
                      },
                      kind);
}

ExtendedReal nonsmooth_value(const ProxKind& kind, Eigen::Index i, const Vector& x) {
    return std::visit(overloaded{
                          [](const ZeroKind&) { return ExtendedReal::finite(0.0); },
                          [&](const WeightedL1& k) {
                              return ExtendedReal::finite(k.coeffs[i] * x.lpNorm<1>());
                          },
                          [&](const BoxIndicator& k) {
                              return in_box(x, k.lower, k.upper) ? ExtendedReal::finite(0.0)
                                                                 : ExtendedReal::infinity();
                          },
                          [&](const SimplexIndicator&) {
                              return in_simplex(x) ? ExtendedReal::finite(0.0) : ExtendedReal::infinity();
                          },
                          [&](const WeightedL1InBox& k) {
                              if (!in_box(x, k.lower, k.upper)) return ExtendedReal::infinity();
                              return ExtendedReal::finite(k.coeffs[i] * x.lpNorm<1>());
                          },
                      },
                      kind);
}

bool has_indicator(const ProxKind& kind) {
    return std::holds_alternative<BoxIndicator>(kind) || std::holds_alternative<SimplexIndicator>(kind) ||
           std::holds_alternative<WeightedL1InBox>(kind);
}

Vector project_to_domain(const ProxKind& kind, const Vector& x) {
    if (const auto* b = std::get_if<BoxIndicator>(&kind)) return project_box(x, b->lower, b->upper);
    if (const auto* b = std::get_if<WeightedL1InBox>(&kind)) return project_box(x, b->lower, b->upper);
    if (std::holds_alternative<SimplexIndicator>(kind)) return project_simplex(x);
    return x;
}

}  // namespace bbpg
