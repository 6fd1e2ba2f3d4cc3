#include "bbpg/bb_rule.hpp"

#include <algorithm>
#include <cmath>

namespace bbpg {

void BBConfig::validate() const {
    require(alpha_min > 0.0 && alpha_min <= alpha_max, "BBConfig: need 0 < alpha_min <= alpha_max");
}

Vector compute_alphas(const BBMemory& mem, const Vector& x, const Matrix& grads, const BBConfig& cfg) {
    cfg.validate();
    require(mem.prev_x.size() == x.size(), "compute_alphas: prev_x has wrong length");
    require(mem.prev_grads.rows() == grads.rows() && mem.prev_grads.cols() == grads.cols(),
            "compute_alphas: gradient matrices differ in shape");
    const Vector s = x - mem.prev_x;
    const double ss = s.squaredNorm();
    if (!(ss > 0.0)) throw DegenerateStepError("compute_alphas: zero step between iterates");
    const double s_norm = std::sqrt(ss);

    Vector alphas(grads.rows());
    for (Eigen::Index i = 0; i < grads.rows(); ++i) {
        const Vector y = (grads.row(i) - mem.prev_grads.row(i)).transpose();
        const double sy = s.dot(y);
        const double y_norm = y.norm();
        double raw;
        if (std::abs(sy) <= 1e-14 * s_norm * y_norm) {
            alphas[i] = cfg.alpha_min;
            continue;
        }
        raw = sy > 0.0 ? sy / ss : y_norm / s_norm;
        alphas[i] = std::clamp(raw, cfg.alpha_min, cfg.alpha_max);
    }
    return alphas;
}

}  // namespace bbpg
