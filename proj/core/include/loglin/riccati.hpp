#pragma once

#include <loglin/types.hpp>

namespace loglin::synthesis {

/// Stabilizing solution of AᵀP + PA - P B R⁻¹ Bᵀ P + Q = 0.
///
/// The stable invariant subspace of the Hamiltonian is extracted with the
/// scaled matrix-sign iteration and polished with Newton–Kleinman steps.
/// Throws InfeasibleError when (A, B) is not stabilizable (Hamiltonian
/// eigenvalues on the imaginary axis).
Matrix solve_care(const Matrix& A, const Matrix& B, const Matrix& Q, const Matrix& R);

/// K = R⁻¹ Bᵀ P for the control law u = -K x.
Matrix lqr_gain(const Matrix& A, const Matrix& B, const Matrix& Q, const Matrix& R);

double care_residual(const Matrix& A, const Matrix& B, const Matrix& Q, const Matrix& R,
                     const Matrix& P);

/// Largest real part of the eigenvalues of A.
double spectral_abscissa(const Matrix& A);

}  // namespace loglin::synthesis
