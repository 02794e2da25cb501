#include <loglin/se23.hpp>

#include <Eigen/SVD>
#include <array>
#include <cmath>
#include <numbers>
#include <sstream>

namespace loglin::se23 {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kMaxSeriesTerms = 240;

// a_{2m} = (-1)^m 2 zeta(2m) / (2 pi)^{2m}, from z/(e^z - 1) = sum B_n z^n / n!.
std::array<double, kMaxSeriesTerms + 1> make_coefficients() {
  std::array<double, kMaxSeriesTerms + 1> a{};
  a[0] = -1.0;
  a[1] = 0.5;
  double scale = 1.0;
  const double two_pi_sq = 4.0 * kPi * kPi;
  for (int m = 1; 2 * m <= kMaxSeriesTerms; ++m) {
    scale /= two_pi_sq;
    double zeta;
    if (m == 1) {
      zeta = kPi * kPi / 6.0;
    } else if (m == 2) {
      zeta = kPi * kPi * kPi * kPi / 90.0;
    } else {
      zeta = 0.0;
      for (int j = 4000; j >= 1; --j) zeta += std::pow(static_cast<double>(j), -2.0 * m);
    }
    a[2 * m] = (m % 2 == 0 ? 2.0 : -2.0) * zeta * scale;
  }
  return a;
}

const std::array<double, kMaxSeriesTerms + 1>& coefficients() {
  static const auto table = make_coefficients();
  return table;
}

}  // namespace

Mat5 GroupState::matrix() const {
  Mat5 X = Mat5::Identity();
  X.topLeftCorner<3, 3>() = R;
  X.block<3, 1>(0, 3) = v;
  X.block<3, 1>(0, 4) = p;
  return X;
}

GroupState GroupState::from_matrix_unchecked(const Mat5& X) {
  GroupState g;
  g.R = X.topLeftCorner<3, 3>();
  g.v = X.block<3, 1>(0, 3);
  g.p = X.block<3, 1>(0, 4);
  return g;
}

GroupState GroupState::operator*(const GroupState& o) const {
  GroupState g;
  g.R = R * o.R;
  g.v = R * o.v + v;
  g.p = R * o.p + p;
  return g;
}

GroupState GroupState::inverse() const {
  GroupState g;
  g.R = R.transpose();
  g.v = -(g.R * v);
  g.p = -(g.R * p);
  return g;
}

bool GroupState::is_valid(double tol) const {
  if (!R.allFinite() || !v.allFinite() || !p.allFinite()) return false;
  return (R.transpose() * R - Mat3::Identity()).norm() <= tol &&
         std::abs(R.determinant() - 1.0) <= tol;
}

Mat3 skew(const Vec3& w) {
  Mat3 S;
  S << 0.0, -w.z(), w.y(),
       w.z(), 0.0, -w.x(),
       -w.y(), w.x(), 0.0;
  return S;
}

Vec3 unskew(const Mat3& S) { return {S(2, 1), S(0, 2), S(1, 0)}; }

InputVector make_input(const Vec3& a, const Vec3& omega) {
  InputVector nu = InputVector::Zero();
  nu.segment<3>(kV) = a;
  nu.segment<3>(kR) = omega;
  return nu;
}

Mat5 hat(const Vec9& x) {
  Mat5 M = Mat5::Zero();
  M.topLeftCorner<3, 3>() = skew(slot_R(x));
  M.block<3, 1>(0, 3) = slot_v(x);
  M.block<3, 1>(0, 4) = slot_p(x);
  return M;
}

Vec9 vee(const Mat5& M, double tol) {
  const double scale = std::max(1.0, M.cwiseAbs().maxCoeff());
  const Mat3 S = M.topLeftCorner<3, 3>();
  const double asym = (S + S.transpose()).cwiseAbs().maxCoeff();
  const double bottom = M.bottomRows<2>().cwiseAbs().maxCoeff();
  if (asym > tol * scale || bottom > tol * scale) {
    std::ostringstream os;
    os << "vee: matrix is not in se2(3) (symmetric part " << asym << ", bottom rows "
       << bottom << ")";
    throw DomainError(os.str());
  }
  Vec9 x;
  x.segment<3>(kP) = M.block<3, 1>(0, 4);
  x.segment<3>(kV) = M.block<3, 1>(0, 3);
  x.segment<3>(kR) = unskew(0.5 * (S - S.transpose()));
  return x;
}

Mat3 exp_so3(const Vec3& phi) {
  const double theta2 = phi.squaredNorm();
  const Mat3 W = skew(phi);
  double a, b;
  if (theta2 < 1e-8) {
    a = 1.0 - theta2 / 6.0 + theta2 * theta2 / 120.0;
    b = 0.5 - theta2 / 24.0 + theta2 * theta2 / 720.0;
  } else {
    const double theta = std::sqrt(theta2);
    a = std::sin(theta) / theta;
    b = (1.0 - std::cos(theta)) / theta2;
  }
  return Mat3::Identity() + a * W + b * W * W;
}

Vec3 log_so3(const Mat3& R) {
  const Vec3 s = 0.5 * unskew(R - R.transpose());
  const double sin_theta = s.norm();
  const double cos_theta = 0.5 * (R.trace() - 1.0);
  const double theta = std::atan2(sin_theta, cos_theta);
  if (theta < 1e-4) {
    const double t2 = theta * theta;
    return (1.0 + t2 / 6.0 + 7.0 * t2 * t2 / 360.0) * s;
  }
  if (theta < 2.5) return (theta / sin_theta) * s;
  // Near pi the skew part vanishes; recover the axis from the symmetric part.
  const Mat3 B = 0.5 * (R + R.transpose()) - cos_theta * Mat3::Identity();
  int i = 0;
  B.diagonal().maxCoeff(&i);
  Vec3 n = B.col(i) / std::sqrt(std::max(B(i, i), 1e-300) * (1.0 - cos_theta));
  n.normalize();
  if (n.dot(s) < 0.0) n = -n;
  return theta * n;
}

Mat3 left_jacobian(const Vec3& phi) {
  const double theta2 = phi.squaredNorm();
  const Mat3 W = skew(phi);
  double a, b;
  if (theta2 < 1e-8) {
    a = 0.5 - theta2 / 24.0 + theta2 * theta2 / 720.0;
    b = 1.0 / 6.0 - theta2 / 120.0 + theta2 * theta2 / 5040.0;
  } else {
    const double theta = std::sqrt(theta2);
    a = (1.0 - std::cos(theta)) / theta2;
    b = (theta - std::sin(theta)) / (theta2 * theta);
  }
  return Mat3::Identity() + a * W + b * W * W;
}

Mat3 left_jacobian_inverse(const Vec3& phi) {
  const double theta2 = phi.squaredNorm();
  const Mat3 W = skew(phi);
  double c;
  if (theta2 < 1e-8) {
    c = 1.0 / 12.0 + theta2 / 720.0 + theta2 * theta2 / 30240.0;
  } else {
    const double theta = std::sqrt(theta2);
    c = 1.0 / theta2 - (1.0 + std::cos(theta)) / (2.0 * theta * std::sin(theta));
  }
  return Mat3::Identity() - 0.5 * W + c * W * W;
}

GroupState exp_group(const Vec9& x) {
  const Vec3 phi = slot_R(x);
  const Mat3 J = left_jacobian(phi);
  GroupState g;
  g.R = exp_so3(phi);
  g.v = J * slot_v(x);
  g.p = J * slot_p(x);
  return g;
}

Vec9 log_group(const GroupState& X) {
  const Vec3 phi = log_so3(X.R);
  if (!phi.allFinite() || phi.norm() >= kPi - kChartMargin) {
    std::ostringstream os;
    os << "log_group: rotation angle " << phi.norm() << " is outside the principal chart";
    throw DomainError(os.str());
  }
  const Mat3 Jinv = left_jacobian_inverse(phi);
  Vec9 x;
  x.segment<3>(kP) = Jinv * X.p;
  x.segment<3>(kV) = Jinv * X.v;
  x.segment<3>(kR) = phi;
  return x;
}

Mat9 ad_matrix(const Vec9& x) {
  Mat9 A = Mat9::Zero();
  const Mat3 W = skew(slot_R(x));
  A.block<3, 3>(kP, kP) = W;
  A.block<3, 3>(kV, kV) = W;
  A.block<3, 3>(kR, kR) = W;
  A.block<3, 3>(kP, kR) = skew(slot_p(x));
  A.block<3, 3>(kV, kR) = skew(slot_v(x));
  return A;
}

Mat9 Ad_matrix(const GroupState& X) {
  Mat9 A = Mat9::Zero();
  A.block<3, 3>(kP, kP) = X.R;
  A.block<3, 3>(kV, kV) = X.R;
  A.block<3, 3>(kR, kR) = X.R;
  A.block<3, 3>(kP, kR) = skew(X.p) * X.R;
  A.block<3, 3>(kV, kR) = skew(X.v) * X.R;
  return A;
}

Mat5 c_matrix() {
  Mat5 C = Mat5::Zero();
  C(3, 4) = 1.0;
  return C;
}

Mat9 c_triangle() {
  Mat9 C = Mat9::Zero();
  C.block<3, 3>(kP, kV) = Mat3::Identity();
  return C;
}

double u_series_coefficient(int k) {
  if (k < 0 || k > kMaxSeriesTerms) return 0.0;
  return coefficients()[static_cast<std::size_t>(k)];
}

Mat9 u_zeta(const Vec9& zeta) {
  const Vec3 phi = slot_R(zeta);
  if (phi.norm() >= kPi - kChartMargin) {
    std::ostringstream os;
    os << "u_zeta: |zeta_R| = " << phi.norm() << " is outside the convergence chart";
    throw DomainError(os.str());
  }
  // ad(zeta) = D + N with D = blkdiag(W, W, W) and N carrying the (p,R) and
  // (v,R) blocks; N D^j N = 0, so f(ad) = f(D) + Df(D)[N] exactly. The series
  // is accumulated blockwise on 3x3 matrices.
  const auto& a = coefficients();
  const Mat3 W = skew(phi);
  const Mat3 P = skew(slot_p(zeta));
  const Mat3 V = skew(slot_v(zeta));

  Mat3 F = a[0] * Mat3::Identity();
  Mat3 FP = Mat3::Zero();
  Mat3 FV = Mat3::Zero();
  Mat3 Wk = Mat3::Identity();  // W^{k-1} at the top of the loop
  Mat3 DP = Mat3::Zero();      // d(W^{k-1})[P]
  Mat3 DV = Mat3::Zero();
  int small_terms = 0;
  for (int k = 1; k <= kMaxSeriesTerms; ++k) {
    DP = DP * W + Wk * P;
    DV = DV * W + Wk * V;
    Wk = Wk * W;
    if (a[k] == 0.0) continue;
    F.noalias() += a[k] * Wk;
    FP.noalias() += a[k] * DP;
    FV.noalias() += a[k] * DV;
    const double term = std::abs(a[k]) * (Wk.cwiseAbs().maxCoeff() + DP.cwiseAbs().maxCoeff() +
                                          DV.cwiseAbs().maxCoeff());
    const double size = F.cwiseAbs().maxCoeff() + FP.cwiseAbs().maxCoeff() +
                        FV.cwiseAbs().maxCoeff();
    if (k > 2 && term <= 1e-17 * size) {
      if (++small_terms >= 2) break;
    } else {
      small_terms = 0;
    }
  }

  Mat9 U = Mat9::Zero();
  U.block<3, 3>(kP, kP) = F;
  U.block<3, 3>(kV, kV) = F;
  U.block<3, 3>(kR, kR) = F;
  U.block<3, 3>(kP, kR) = FP;
  U.block<3, 3>(kV, kR) = FV;
  return U;
}

GroupState project_to_group(const Mat5& X, double tol) {
  const Mat3 M = X.topLeftCorner<3, 3>();
  if (!X.topRows<3>().allFinite()) throw DomainError("project_to_group: non-finite entries");
  Eigen::JacobiSVD<Mat3> svd(M, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Mat3 R = svd.matrixU() * svd.matrixV().transpose();
  const double dist = (M - R).norm();
  if (R.determinant() < 0.0 || dist > tol) {
    std::ostringstream os;
    os << "project_to_group: block is " << dist << " from a rotation (det "
       << M.determinant() << ")";
    throw DomainError(os.str());
  }
  GroupState g;
  g.R = R;
  g.v = X.block<3, 1>(0, 3);
  g.p = X.block<3, 1>(0, 4);
  return g;
}

}  // namespace loglin::se23
