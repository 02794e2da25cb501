#pragma once

// The SE_2(3) group of double-homogeneous 5x5 matrices and its 9-dimensional
// algebra. Every 9-vector is ordered (p-slot, v-slot, R-slot):
//
//   hat(x) = [ (x_R)x  x_v  x_p ]
//            [   0      0    0  ]
//            [   0      0    0  ]

#include <loglin/types.hpp>

namespace loglin::se23 {

/// Tangent vector of the error state, (zeta_p, zeta_v, zeta_R).
using AlgebraVector = Vec9;

/// Input vector (nu_p, nu_v, nu_R). Vehicle inputs have nu_p = 0, the
/// specific force in the v-slot and the body rate in the R-slot.
using InputVector = Vec9;

inline constexpr int kP = 0;
inline constexpr int kV = 3;
inline constexpr int kR = 6;

/// Element (R, v, p) of SE_2(3).
struct GroupState {
  Mat3 R = Mat3::Identity();
  Vec3 v = Vec3::Zero();
  Vec3 p = Vec3::Zero();

  static GroupState identity() { return {}; }

  Mat5 matrix() const;
  /// Reads the top three rows of a 5x5 matrix; no projection, no checks.
  static GroupState from_matrix_unchecked(const Mat5& X);

  GroupState operator*(const GroupState& other) const;
  GroupState inverse() const;

  /// True when R is a rotation within `tol` (Frobenius of RᵀR - I, and det).
  bool is_valid(double tol = 1e-9) const;
};

Mat3 skew(const Vec3& w);
Vec3 unskew(const Mat3& S);

/// Builds an input vector (0, a, omega).
InputVector make_input(const Vec3& a, const Vec3& omega);

inline Vec3 slot_p(const Vec9& x) { return x.segment<3>(kP); }
inline Vec3 slot_v(const Vec9& x) { return x.segment<3>(kV); }
inline Vec3 slot_R(const Vec9& x) { return x.segment<3>(kR); }

Mat5 hat(const Vec9& x);

/// Inverse of hat. Throws DomainError when M is outside the algebra pattern
/// by more than `tol`.
Vec9 vee(const Mat5& M, double tol = 1e-12);

Mat3 exp_so3(const Vec3& phi);
/// Principal log of a rotation. Smooth in R, so nearly-orthogonal matrices
/// (RK4 stage values) are accepted without projection.
Vec3 log_so3(const Mat3& R);
/// SO(3) left Jacobian and its inverse.
Mat3 left_jacobian(const Vec3& phi);
Mat3 left_jacobian_inverse(const Vec3& phi);

GroupState exp_group(const Vec9& x);

/// Principal logarithm. Throws DomainError when the rotation angle is at or
/// beyond pi - 1e-6.
Vec9 log_group(const GroupState& X);

inline constexpr double kChartMargin = 1e-6;

/// 9x9 matrix with hat(ad(x) y) = [hat(x), hat(y)].
Mat9 ad_matrix(const Vec9& x);

/// 9x9 group adjoint with hat(Ad(X) y) = X hat(y) X^-1.
Mat9 Ad_matrix(const GroupState& X);

/// The kinematic embedding matrix (single 1 at row 4, column 5).
Mat5 c_matrix();

/// C-triangle: maps (p, v, R) to (v, 0, 0), so that
/// hat(x) C - C hat(x) = hat(C_triangle x).
Mat9 c_triangle();

/// Input-distortion matrix U(zeta) = f(ad(zeta)) with
/// f(z) = -z e^{-z} / (1 - e^{-z}) = -z / (e^z - 1), evaluated by its power
/// series. Throws DomainError for |zeta_R| >= pi - 1e-6.
Mat9 u_zeta(const Vec9& zeta);

/// Coefficients a_k of f(z) = sum a_k z^k (a_0 = -1, a_1 = 1/2, a_2 = -1/12,
/// odd k > 1 vanish). Exposed for tests.
double u_series_coefficient(int k);

/// Projects a 5x5 matrix onto the group: R by its polar factor, v and p
/// copied. Throws DomainError when R is farther than `tol` (Frobenius) from
/// a rotation or has negative determinant.
GroupState project_to_group(const Mat5& X, double tol = 1e-3);

}  // namespace loglin::se23
