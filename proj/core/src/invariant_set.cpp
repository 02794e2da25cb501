#include <loglin/invariant_set.hpp>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <vector>

#include <loglin/lyapunov.hpp>
#include <loglin/riccati.hpp>

namespace loglin::synthesis {

Matrix Ellipsoid::shape() const {
  Matrix S = P.llt().solve(Matrix::Identity(P.rows(), P.cols()));
  return 0.5 * (S + S.transpose());
}

Matrix box_to_energy_weight(const Vector& d_inf) {
  const auto m = static_cast<double>(d_inf.size());
  return (m * d_inf.array().square()).matrix().asDiagonal();
}

Matrix invariant_shape(const Matrix& A_cl, const Matrix& BWBt, double alpha) {
  const Matrix shifted = A_cl + 0.5 * alpha * Matrix::Identity(A_cl.rows(), A_cl.cols());
  return solve_lyapunov(shifted, BWBt / alpha);
}

namespace {

double objective_value(const Matrix& Q, Objective objective) {
  Eigen::LLT<Matrix> llt(Q);
  if (llt.info() != Eigen::Success) return std::numeric_limits<double>::infinity();
  if (objective == Objective::Trace) return Q.trace();
  double log_det = 0.0;
  for (Eigen::Index i = 0; i < Q.rows(); ++i) log_det += 2.0 * std::log(llt.matrixL()(i, i));
  return log_det;
}

}  // namespace

InvariantSet invariant_ellipsoid(const Matrix& A_cl, const Matrix& B, const Vector& d_inf,
                                 Objective objective) {
  const Eigen::Index n = A_cl.rows();
  if (A_cl.cols() != n || B.rows() != n || B.cols() != d_inf.size())
    throw DomainError("invariant_ellipsoid: dimension mismatch");
  if ((d_inf.array() < 0.0).any() || !d_inf.allFinite())
    throw DomainError("invariant_ellipsoid: disturbance bounds must be finite and non-negative");

  std::vector<Eigen::Index> active;
  for (Eigen::Index j = 0; j < d_inf.size(); ++j)
    if (d_inf(j) > 0.0) active.push_back(j);
  if (active.empty())
    throw InfeasibleError(
        "invariant_ellipsoid: all disturbance bounds are zero; the minimal invariant set is the "
        "origin, use a plain Lyapunov stability analysis instead");

  InvariantSet out;
  out.A_cl = A_cl;
  out.B.resize(n, static_cast<Eigen::Index>(active.size()));
  out.channel_bounds.resize(static_cast<Eigen::Index>(active.size()));
  for (std::size_t k = 0; k < active.size(); ++k) {
    out.B.col(static_cast<Eigen::Index>(k)) = B.col(active[k]);
    out.channel_bounds(static_cast<Eigen::Index>(k)) = d_inf(active[k]);
  }
  out.W = box_to_energy_weight(out.channel_bounds);
  const Matrix BWBt = out.B * out.W * out.B.transpose();

  const double abscissa = spectral_abscissa(A_cl);
  if (!(abscissa < 0.0)) {
    std::ostringstream os;
    os << "invariant_ellipsoid: closed loop is not Hurwitz (max Re λ = " << abscissa << ")";
    throw InfeasibleError(os.str());
  }
  const double alpha_max = -2.0 * abscissa;

  auto evaluate = [&](double alpha) {
    try {
      return objective_value(invariant_shape(A_cl, BWBt, alpha), objective);
    } catch (const NumericalError&) {
      return std::numeric_limits<double>::infinity();
    }
  };

  constexpr double kInvPhi = 0.6180339887498948482;
  double lo = 1e-9 * alpha_max;
  double hi = (1.0 - 1e-9) * alpha_max;
  double x1 = hi - kInvPhi * (hi - lo);
  double x2 = lo + kInvPhi * (hi - lo);
  double f1 = evaluate(x1);
  double f2 = evaluate(x2);
  while (hi - lo > 1e-6 * alpha_max) {
    if (f1 <= f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - kInvPhi * (hi - lo);
      f1 = evaluate(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + kInvPhi * (hi - lo);
      f2 = evaluate(x2);
    }
  }
  const double alpha = f1 <= f2 ? x1 : x2;
  if (!std::isfinite(std::min(f1, f2)))
    throw InfeasibleError("invariant_ellipsoid: no multiplier gives a positive-definite set");

  Matrix Q = invariant_shape(A_cl, BWBt, alpha);
  Q = 0.5 * (Q + Q.transpose()).eval();
  Eigen::LLT<Matrix> llt(Q);
  if (llt.info() != Eigen::Success)
    throw NumericalError("invariant_ellipsoid: shape matrix is not positive definite");
  Matrix P = llt.solve(Matrix::Identity(n, n));
  out.ellipsoid.P = 0.5 * (P + P.transpose());
  out.ellipsoid.alpha = alpha;
  return out;
}

double certificate_residual(const InvariantSet& set) {
  const Matrix& P = set.ellipsoid.P;
  const double alpha = set.ellipsoid.alpha;
  const Eigen::Index n = P.rows();
  const Eigen::Index m = set.B.cols();
  const Matrix W_half = set.W.diagonal().cwiseSqrt().asDiagonal();
  Matrix M(n + m, n + m);
  M.topLeftCorner(n, n) = set.A_cl.transpose() * P + P * set.A_cl + alpha * P;
  M.topRightCorner(n, m) = P * set.B * W_half;
  M.bottomLeftCorner(m, n) = M.topRightCorner(n, m).transpose();
  M.bottomRightCorner(m, m) = -alpha * Matrix::Identity(m, m);
  M = 0.5 * (M + M.transpose()).eval();
  Eigen::SelfAdjointEigenSolver<Matrix> es(M, Eigen::EigenvaluesOnly);
  return es.eigenvalues().maxCoeff();
}

double ellipsoid_axis_bound(const Ellipsoid& E, Eigen::Index i) {
  return std::sqrt(E.shape()(i, i));
}

double ellipsoid_radius(const Ellipsoid& E) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(E.P, Eigen::EigenvaluesOnly);
  return 1.0 / std::sqrt(es.eigenvalues().minCoeff());
}

bool ellipsoid_contains(const Ellipsoid& outer, const Ellipsoid& inner, double tol) {
  const Matrix diff = outer.shape() - inner.shape();
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (diff + diff.transpose()), Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff() >= -tol * std::max(1.0, outer.shape().norm());
}

}  // namespace loglin::synthesis
