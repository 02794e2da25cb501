#include <loglin/dynamics.hpp>

namespace loglin::dynamics {

using se23::kR;
using se23::kV;

Mat9x4 input_matrix() {
  Mat9x4 B = Mat9x4::Zero();
  B.bottomRows<4>() = Eigen::Matrix4d::Identity();
  return B;
}

Mat9x6 disturbance_matrix() {
  Mat9x6 B = Mat9x6::Zero();
  B.block<3, 3>(kV, 0) = Mat3::Identity();
  B.block<3, 3>(kR, 3) = Mat3::Identity();
  return B;
}

ZetaSystem zeta_system(const se23::InputVector& nubar) {
  return {-se23::ad_matrix(nubar) + se23::c_triangle(), input_matrix(), disturbance_matrix(),
          nubar};
}

se23::GroupState left_error(const se23::GroupState& X_b, const se23::GroupState& Xbar_r) {
  return X_b.inverse() * Xbar_r;
}

Vec9 zeta_rhs(const Vec9& zeta, const se23::InputVector& nubar, const Vec9& nu_tilde) {
  const Mat9 A = -se23::ad_matrix(nubar) + se23::c_triangle();
  return A * zeta + se23::u_zeta(zeta) * nu_tilde;
}

Vec9 zeta_rhs_exact(const Vec9& zeta, const se23::InputVector& nubar, const Vec4& u,
                    const Vec6& d) {
  return zeta_rhs(zeta, nubar, input_matrix() * u + disturbance_matrix() * d);
}

Vec9 zeta_rhs_closed_loop(const Vec9& zeta, const Mat9& A, const Mat9x4& B_u,
                          const Mat4x9& K_zeta, const Vec9& d_lifted) {
  return (A + B_u * K_zeta) * zeta + d_lifted;
}

Vec3 omega_error(const Vec3& omegabar_r, const Mat3& R_rb, const Vec3& omega_b) {
  return omegabar_r - R_rb * omega_b;
}

Vec3 omega_error_rhs(const Vec3& omega_err, const Vec3& omegabar, const Mat3& K_omega,
                     const Vec3& d_alpha) {
  return -omegabar.cross(omega_err) + K_omega * omega_err + d_alpha;
}

}  // namespace loglin::dynamics
