#pragma once

#include "bbpg/common.hpp"

namespace bbpg {

struct BBConfig {
    double alpha_min = 1e-3;
    double alpha_max = 1e3;

    void validate() const;
};

/// Previous iterate and its Jacobian.
struct BBMemory {
    Vector prev_x;
    Matrix prev_grads;
};

class DegenerateStepError : public Error {
public:
    using Error::Error;
};

/// Per-objective Barzilai-Borwein scalars with s = x - prev_x and
/// y_i = grads_i - prev_grads_i:
///   <s,y_i> > 0 : clamp(<s,y_i>/<s,s>)
///   <s,y_i> < 0 : clamp(||y_i||/||s||)
///   <s,y_i> = 0 : alpha_min
/// where the zero test is |<s,y_i>| <= 1e-14 ||s|| ||y_i||.
/// Throws DegenerateStepError when s = 0.
Vector compute_alphas(const BBMemory& mem, const Vector& x, const Matrix& grads, const BBConfig& cfg);

}  // namespace bbpg
