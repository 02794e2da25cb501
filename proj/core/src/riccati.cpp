#include <loglin/riccati.hpp>

#include <Eigen/Eigenvalues>
#include <Eigen/LU>
#include <Eigen/QR>
#include <cmath>
#include <sstream>

#include <loglin/lyapunov.hpp>

namespace loglin::synthesis {

double spectral_abscissa(const Matrix& A) {
  if (A.rows() == 0) return -std::numeric_limits<double>::infinity();
  Eigen::EigenSolver<Matrix> es(A, false);
  if (es.info() != Eigen::Success) throw NumericalError("spectral_abscissa: eigensolver failed");
  return es.eigenvalues().real().maxCoeff();
}

double care_residual(const Matrix& A, const Matrix& B, const Matrix& Q, const Matrix& R,
                     const Matrix& P) {
  const Matrix G = B * R.llt().solve(B.transpose());
  return (A.transpose() * P + P * A - P * G * P + Q).norm();
}

Matrix solve_care(const Matrix& A, const Matrix& B, const Matrix& Q, const Matrix& R) {
  const Eigen::Index n = A.rows();
  if (A.cols() != n || B.rows() != n || Q.rows() != n || Q.cols() != n ||
      R.rows() != B.cols() || R.cols() != B.cols())
    throw DomainError("solve_care: dimension mismatch");
  Eigen::LLT<Matrix> r_llt(R);
  if (r_llt.info() != Eigen::Success) throw DomainError("solve_care: R is not positive definite");

  const Matrix G = B * r_llt.solve(B.transpose());
  Matrix H(2 * n, 2 * n);
  H << A, -G, -Q, -A.transpose();

  {
    Eigen::EigenSolver<Matrix> es(H, false);
    if (es.info() != Eigen::Success) throw NumericalError("solve_care: Hamiltonian eigensolver failed");
    const double scale = std::max(1.0, H.cwiseAbs().maxCoeff());
    const double min_re = es.eigenvalues().real().cwiseAbs().minCoeff();
    if (min_re <= 1e-9 * scale) {
      std::ostringstream os;
      os << "solve_care: Hamiltonian has eigenvalues on the imaginary axis (|Re| = " << min_re
         << "); the pair is not stabilizable/detectable";
      throw InfeasibleError(os.str());
    }
  }

  // Matrix sign function with determinant scaling.
  Matrix Z = H;
  const Eigen::Index m = 2 * n;
  bool converged = false;
  for (int iter = 0; iter < 100; ++iter) {
    Eigen::PartialPivLU<Matrix> lu(Z);
    const Matrix Zinv = lu.inverse();
    double log_det = 0.0;
    for (Eigen::Index i = 0; i < m; ++i) log_det += std::log(std::abs(lu.matrixLU()(i, i)));
    const double c = std::exp(log_det / static_cast<double>(m));
    const Matrix next = 0.5 * (Z / c + c * Zinv);
    const double change = (next - Z).lpNorm<1>();
    Z = next;
    if (change <= 1e-13 * Z.lpNorm<1>()) {
      converged = true;
      break;
    }
  }
  if (!converged) throw NumericalError("solve_care: sign iteration did not converge");

  // [I; P] spans ker(Z + I).
  const Matrix I = Matrix::Identity(n, n);
  Matrix lhs(2 * n, n);
  lhs << Z.topRightCorner(n, n), Z.bottomRightCorner(n, n) + I;
  Matrix rhs(2 * n, n);
  rhs << -(Z.topLeftCorner(n, n) + I), -Z.bottomLeftCorner(n, n);
  const Eigen::ColPivHouseholderQR<Matrix> qr(lhs);
  if (qr.rank() < n)
    throw InfeasibleError("solve_care: stable subspace is not a graph; the pair is not stabilizable");
  Matrix P = qr.solve(rhs);
  P = 0.5 * (P + P.transpose()).eval();
  if (!P.allFinite()) throw InfeasibleError("solve_care: no finite stabilizing solution");

  // Newton–Kleinman polishing.
  double best = care_residual(A, B, Q, R, P);
  for (int iter = 0; iter < 8 && best > 1e-13 * std::max(1.0, P.norm()); ++iter) {
    const Matrix K = r_llt.solve(B.transpose() * P);
    const Matrix Ak = A - B * K;
    Matrix next;
    try {
      next = solve_lyapunov(Ak.transpose(), Q + K.transpose() * R * K);
    } catch (const NumericalError&) {
      break;
    }
    const double res = care_residual(A, B, Q, R, next);
    if (!(res < best)) break;
    best = res;
    P = next;
  }

  const Matrix K = r_llt.solve(B.transpose() * P);
  if (spectral_abscissa(A - B * K) >= 0.0)
    throw InfeasibleError("solve_care: closed loop A - BK is not Hurwitz");
  return P;
}

Matrix lqr_gain(const Matrix& A, const Matrix& B, const Matrix& Q, const Matrix& R) {
  const Matrix P = solve_care(A, B, Q, R);
  return R.llt().solve(B.transpose() * P);
}

}  // namespace loglin::synthesis
