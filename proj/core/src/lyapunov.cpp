#include <loglin/lyapunov.hpp>

#include <Eigen/Eigenvalues>
#include <complex>
#include <sstream>

namespace loglin::synthesis {

Matrix solve_lyapunov(const Matrix& A, const Matrix& Q) {
  const Eigen::Index n = A.rows();
  if (A.cols() != n || Q.rows() != n || Q.cols() != n)
    throw DomainError("solve_lyapunov: dimension mismatch");
  if (n == 0) return Matrix(0, 0);

  using Complex = std::complex<double>;
  using CMatrix = Eigen::MatrixXcd;

  Eigen::ComplexSchur<Matrix> schur(A);
  if (schur.info() != Eigen::Success) throw NumericalError("solve_lyapunov: Schur failed");
  const CMatrix& T = schur.matrixT();
  const CMatrix& U = schur.matrixU();

  // T Y + Y Tᴴ = C with Y = Uᴴ X U, solved from the bottom-right corner.
  const CMatrix C = -(U.adjoint() * Q.cast<Complex>() * U);
  CMatrix Y = CMatrix::Zero(n, n);
  const double tiny = 1e-13 * std::max(1.0, A.cwiseAbs().maxCoeff());
  for (Eigen::Index i = n - 1; i >= 0; --i) {
    for (Eigen::Index j = n - 1; j >= 0; --j) {
      Complex rhs = C(i, j);
      for (Eigen::Index k = i + 1; k < n; ++k) rhs -= T(i, k) * Y(k, j);
      for (Eigen::Index k = j + 1; k < n; ++k) rhs -= Y(i, k) * std::conj(T(j, k));
      const Complex denom = T(i, i) + std::conj(T(j, j));
      if (std::abs(denom) <= tiny) {
        std::ostringstream os;
        os << "solve_lyapunov: eigenvalues " << T(i, i) << " and " << T(j, j)
           << " make the equation singular";
        throw NumericalError(os.str());
      }
      Y(i, j) = rhs / denom;
    }
  }
  Matrix X = (U * Y * U.adjoint()).real();
  if ((Q - Q.transpose()).cwiseAbs().maxCoeff() <= 1e-14 * std::max(1.0, Q.cwiseAbs().maxCoeff()))
    X = 0.5 * (X + X.transpose()).eval();
  return X;
}

double lyapunov_residual(const Matrix& A, const Matrix& X, const Matrix& Q) {
  return (A * X + X * A.transpose() + Q).norm();
}

}  // namespace loglin::synthesis
