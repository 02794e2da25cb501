#pragma once

#include <loglin/types.hpp>

namespace loglin::synthesis {

/// Solves A X + X Aᵀ + Q = 0 by Bartels–Stewart on the complex Schur form of A.
///
/// Requires that A and -A share no eigenvalue (in particular any Hurwitz A).
/// Throws NumericalError when some λ_i + conj(λ_j) is numerically zero.
Matrix solve_lyapunov(const Matrix& A, const Matrix& Q);

/// Frobenius norm of A X + X Aᵀ + Q.
double lyapunov_residual(const Matrix& A, const Matrix& X, const Matrix& Q);

}  // namespace loglin::synthesis
