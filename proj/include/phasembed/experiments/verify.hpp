#pragma once

#include <vector>

#include "phasembed/core/matrix.hpp"
#include "phasembed/synth/ode.hpp"

namespace phasembed::experiments {

using core::Matrix;

struct SimilarityCheck {
    bool pass = false;
    double max_deviation = 0.0;  // worst per-coefficient mixed abs/rel deviation
};

/// Checks that W*J*W^-1 and J share a characteristic polynomial: the
/// similarity-invariance of eigenvalues stated coefficient-wise.
/// Deviation per coefficient is |delta| / max(1, |reference|); pass
/// threshold 1e-8. Throws Singular for non-invertible W.
SimilarityCheck verify_similarity(const Matrix& j, const Matrix& w);

/// Arithmetic mean of the system Jacobian over a trajectory segment
/// (the linearization a patch-sized embedding sees).
Matrix jacobian_average(const synth::OdeSystem& sys,
                        const std::vector<synth::State>& segment, double t = 0.0);

/// Matrix exponential by scaling-and-squaring with an order-12 Taylor
/// series; squarings chosen so the scaled norm is below 0.5.
Matrix expm(const Matrix& a);

/// Per-axis exponents (1/t)*ln sigma_i of the linear flow x' = A x over
/// time t: the finite-time Lyapunov exponents of exp(A t), descending.
/// Singular values come from jacobi_eigh on M^T M.
std::vector<double> verify_lyapunov_svd(const Matrix& a, double t);

}  // namespace phasembed::experiments
