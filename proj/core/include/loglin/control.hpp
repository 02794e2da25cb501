#pragma once

#include <loglin/se23.hpp>

namespace loglin::synthesis {

struct VehicleParams {
  Mat3 inertia = Eigen::Vector3d(0.02, 0.02, 0.04).asDiagonal();
  double mass = 1.0;
  Vec3 gravity{0.0, 0.0, -9.81};

  /// Throws DomainError unless the inertia is symmetric positive definite and
  /// the mass positive.
  void validate() const;
};

/// Dynamic inversion restricted to the four actuated channels:
/// u = (B_uᵀ U(ζ) B_u)⁻¹ K_ζ ζ, so that B_uᵀ U(ζ) B_u u = K_ζ ζ exactly.
/// The unactuated rows of U(ζ) B_u u differ from zero by O(|ζ|²).
Vec4 dynamic_inversion_zeta(const Vec9& zeta, const Mat4x9& K_zeta);

/// Lifted inversion with a full 9-dimensional input: solves U(ζ) y = B_u K_ζ ζ,
/// which cancels the distortion exactly (requires a p-slot input).
Vec9 dynamic_inversion_lifted(const Vec9& zeta, const Mat4x9& K_zeta);

/// Commanded body angular acceleration R_br (feedforward - K_ω e_r).
/// The unknown disturbance is not part of the law.
Vec3 angular_rate_command(const Vec3& feedforward_r, const Vec3& omega_err, const Mat3& R_br,
                          const Mat3& K_omega);

/// Euler moment J ω' + ω × J ω.
Vec3 moment(const VehicleParams& vehicle, const Vec3& omega_dot_cmd, const Vec3& omega_b);

}  // namespace loglin::synthesis
