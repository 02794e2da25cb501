#include <loglin/control.hpp>

#include <Eigen/Cholesky>
#include <Eigen/LU>

#include <loglin/dynamics.hpp>

namespace loglin::synthesis {

void VehicleParams::validate() const {
  if (!(mass > 0.0) || !std::isfinite(mass)) throw DomainError("vehicle: mass must be positive");
  if (!inertia.allFinite() || (inertia - inertia.transpose()).cwiseAbs().maxCoeff() > 1e-12)
    throw DomainError("vehicle: inertia must be symmetric");
  if (Eigen::LLT<Mat3>(inertia).info() != Eigen::Success)
    throw DomainError("vehicle: inertia must be positive definite");
  if (!gravity.allFinite()) throw DomainError("vehicle: gravity must be finite");
}

Vec4 dynamic_inversion_zeta(const Vec9& zeta, const Mat4x9& K_zeta) {
  const Mat9 U = se23::u_zeta(zeta);
  const Eigen::Matrix4d S = U.bottomRightCorner<4, 4>();
  return S.partialPivLu().solve(K_zeta * zeta);
}

Vec9 dynamic_inversion_lifted(const Vec9& zeta, const Mat4x9& K_zeta) {
  const Mat9 U = se23::u_zeta(zeta);
  return U.partialPivLu().solve(dynamics::input_matrix() * (K_zeta * zeta));
}

Vec3 angular_rate_command(const Vec3& feedforward_r, const Vec3& omega_err, const Mat3& R_br,
                          const Mat3& K_omega) {
  return R_br * (feedforward_r - K_omega * omega_err);
}

Vec3 moment(const VehicleParams& vehicle, const Vec3& omega_dot_cmd, const Vec3& omega_b) {
  return vehicle.inertia * omega_dot_cmd + omega_b.cross(vehicle.inertia * omega_b);
}

}  // namespace loglin::synthesis
