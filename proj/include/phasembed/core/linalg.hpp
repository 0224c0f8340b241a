#pragma once

#include <utility>
#include <vector>

#include "phasembed/core/matrix.hpp"

namespace phasembed::core {

/// Desk-scale size cap for char_poly / invert; keeps the Faddeev-LeVerrier
/// recurrence well inside double precision.
inline constexpr std::size_t kMaxSquareDim = 12;

/// Coefficients of det(lambda*I - A), monic, highest degree first
/// (length n+1). Faddeev-LeVerrier recurrence.
std::vector<double> char_poly(const Matrix& a);

/// Inverse by Gaussian elimination with partial pivoting.
/// Throws Singular when a pivot falls below 1e-12 relative to the
/// input's magnitude scale.
Matrix invert(const Matrix& a);

struct EigenDecomposition {
    std::vector<double> eigenvalues;  // non-increasing
    Matrix eigenvectors;              // columns match eigenvalues
};

/// Cyclic Jacobi rotations for a symmetric matrix. Sweeps until the
/// off-diagonal Frobenius norm drops below 1e-11 * ||S||_F.
EigenDecomposition jacobi_eigh(const Matrix& s);

/// Solves A * X = B for X with A square (any desk-scale size), partial
/// pivoting. Shared plumbing for the ridge solver; no kMaxSquareDim cap.
/// Throws IllConditioned when a pivot falls below 1e-12 after scaling.
Matrix solve_linear(Matrix a, Matrix b);

}  // namespace phasembed::core
