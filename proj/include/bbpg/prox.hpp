#pragma once

// Closed-form proximal and projection operators for the nonsmooth kinds
// supported by the solvers.

#include "bbpg/common.hpp"

#include <string>
#include <variant>

namespace bbpg {

/// g_i = 0 for all objectives.
struct ZeroKind {};

/// g_i(x) = c_i * ||x||_1 with c_i > 0.
struct WeightedL1 {
    Vector coeffs;
};

/// g_i = indicator of the box [lower, upper] for all objectives.
struct BoxIndicator {
    Vector lower;
    Vector upper;
};

/// g_i = indicator of the unit simplex for all objectives.
struct SimplexIndicator {};

/// g_i(x) = c_i * ||x||_1 + indicator of [lower, upper]. Used when box
/// bounds are folded into the nonsmooth part so that every direction keeps
/// the iterate feasible.
struct WeightedL1InBox {
    Vector coeffs;
    Vector lower;
    Vector upper;
};

using ProxKind = std::variant<ZeroKind, WeightedL1, BoxIndicator, SimplexIndicator, WeightedL1InBox>;

std::string kind_name(const ProxKind& kind);

/// Validates coefficient signs, bound ordering and sizes against (m, n).
/// Throws InputError.
void validate_kind(const ProxKind& kind, Eigen::Index m, Eigen::Index n);

/// Componentwise sign(v) * max(|v| - kappa, 0).
Vector soft_threshold(const Vector& v, double kappa);

Vector project_box(const Vector& v, const Vector& lower, const Vector& upper);

/// Euclidean projection onto {x >= 0, sum x = 1} by sort-and-threshold.
Vector project_simplex(const Vector& v);

/// Prox of sum_i w_i g_i at v. Zero total weight returns v unchanged for
/// every kind, including the indicators.
Vector combined_prox(const ProxKind& kind, const Vector& w, const Vector& v);

/// g_i(x) for objective i. Indicators are +infinity outside their set, with
/// a small slack for rounding (see feasibility_tolerance).
ExtendedReal nonsmooth_value(const ProxKind& kind, Eigen::Index i, const Vector& x);

/// True if the kind contains an indicator function.
bool has_indicator(const ProxKind& kind);

/// Projects x onto the domain of the kind (identity for kinds without an
/// indicator).
Vector project_to_domain(const ProxKind& kind, const Vector& x);

inline constexpr double feasibility_tolerance = 1e-9;

}  // namespace bbpg
