#pragma once

// Error-state systems for left-invariant tracking on SE_2(3).
//
// With eta = X_b^-1 Xbar_r = exp(hat(zeta)) the error obeys, exactly,
//
//   zeta' = A zeta + U(zeta) nu_tilde,   A = -ad(nubar) + C_triangle,
//
// where nu_tilde = nu_b - nubar. Splitting nu_tilde = B_u u + B_d d gives the
// control/disturbance form used for synthesis.

#include <loglin/se23.hpp>

namespace loglin::dynamics {

/// Control channels: thrust-axis acceleration and the three body rates.
Mat9x4 input_matrix();
/// Disturbance channels: specific force (v-slot) and rate error (R-slot).
Mat9x6 disturbance_matrix();

struct ZetaSystem {
  Mat9 A;
  Mat9x4 B_u;
  Mat9x6 B_d;
  se23::InputVector nubar;
};

ZetaSystem zeta_system(const se23::InputVector& nubar);

/// eta = X_b^-1 Xbar_r.
se23::GroupState left_error(const se23::GroupState& X_b, const se23::GroupState& Xbar_r);

/// A zeta + U(zeta) nu_tilde for an arbitrary input difference nu_tilde.
Vec9 zeta_rhs(const Vec9& zeta, const se23::InputVector& nubar, const Vec9& nu_tilde);

/// A zeta + U(zeta) B_u u + U(zeta) B_d d. U acts on the lifted 9-vectors.
Vec9 zeta_rhs_exact(const Vec9& zeta, const se23::InputVector& nubar, const Vec4& u,
                    const Vec6& d);

/// (A + B_u K) zeta + d_lifted, the linear closed loop under dynamic inversion.
Vec9 zeta_rhs_closed_loop(const Vec9& zeta, const Mat9& A, const Mat9x4& B_u,
                          const Mat4x9& K_zeta, const Vec9& d_lifted);

/// Rate error in the reference frame, omegabar_r - R_rb omega_b.
Vec3 omega_error(const Vec3& omegabar_r, const Mat3& R_rb, const Vec3& omega_b);

/// -omegabar x e + K_omega e + d_alpha.
Vec3 omega_error_rhs(const Vec3& omega_err, const Vec3& omegabar, const Mat3& K_omega,
                     const Vec3& d_alpha);

}  // namespace loglin::dynamics
