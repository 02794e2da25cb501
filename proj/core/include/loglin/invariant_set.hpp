#pragma once

#include <loglin/types.hpp>

namespace loglin::synthesis {

/// {x : xᵀ P x <= 1} together with the S-procedure multiplier that certifies it.
struct Ellipsoid {
  Matrix P;
  double alpha = 0.0;

  Eigen::Index dim() const { return P.rows(); }
  double value(const Vector& x) const { return x.dot(P * x); }
  /// Shape matrix P⁻¹.
  Matrix shape() const;
};

enum class Objective { Trace, LogDet };

/// Everything needed to re-check an invariant-ellipsoid certificate.
struct InvariantSet {
  Ellipsoid ellipsoid;
  Matrix A_cl;
  /// Disturbance input matrix restricted to channels with a positive bound.
  Matrix B;
  Vector channel_bounds;
  /// Energy weight replacing the box bound: W = m diag(d)^2.
  Matrix W;
};

/// W = m diag(d)^2: the ellipsoid dᵀW⁻¹d <= 1 contains the box |d_i| <= d_i.
Matrix box_to_energy_weight(const Vector& d_inf);

/// Boundary of the invariant-ellipsoid LMI for a fixed multiplier:
/// A Q + Q Aᵀ + alpha Q + (1/alpha) B W Bᵀ = 0.
Matrix invariant_shape(const Matrix& A_cl, const Matrix& BWBt, double alpha);

/// Smallest invariant ellipsoid (by trace or log det of P⁻¹) for
/// x' = A_cl x + B d, |d_i| <= d_inf_i, found by golden-section search over
/// alpha in (0, -2 max Re λ(A_cl)).
///
/// Zero-bound channels are dropped. Throws InfeasibleError when A_cl is not
/// Hurwitz or every bound is zero (the minimal set is the origin; analyse
/// that case with a plain Lyapunov function instead).
InvariantSet invariant_ellipsoid(const Matrix& A_cl, const Matrix& B, const Vector& d_inf,
                                 Objective objective = Objective::Trace);

/// Largest eigenvalue of [[A_clᵀP + P A_cl + αP, P B W^½], [W^½ Bᵀ P, -αI]].
double certificate_residual(const InvariantSet& set);

/// max |x_i| over the ellipsoid, sqrt((P⁻¹)_ii).
double ellipsoid_axis_bound(const Ellipsoid& E, Eigen::Index i);

/// max ‖x‖₂ over the ellipsoid.
double ellipsoid_radius(const Ellipsoid& E);

/// True when {xᵀ P_inner x <= 1} ⊆ {xᵀ P_outer x <= 1}, i.e.
/// P_outer⁻¹ - P_inner⁻¹ is positive semidefinite within `tol`.
bool ellipsoid_contains(const Ellipsoid& outer, const Ellipsoid& inner, double tol = 1e-10);

}  // namespace loglin::synthesis
