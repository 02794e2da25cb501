#include <loglin/trajectory.hpp>

#include <unsupported/Eigen/MatrixFunctions>

namespace loglin::trajectory {

FlatReference::FlatReference(Trajectory traj, double mass, const Vec3& gravity)
    : traj_(std::move(traj)), mass_(mass), gravity_(gravity) {
  if (!(mass_ > 0.0)) throw DomainError("FlatReference: mass must be positive");
}

ReferenceSample FlatReference::sample(double t) const {
  return flatness_reference(traj_, t, mass_, gravity_);
}

ConstantInputReference::ConstantInputReference(const se23::GroupState& X0,
                                               const se23::InputVector& nubar,
                                               const Vec3& gravity)
    : X0_(X0), nubar_(nubar) {
  if (!X0.is_valid(1e-9)) throw DomainError("ConstantInputReference: X0 is not a group element");
  Mat5 g_hat = Mat5::Zero();
  g_hat.block<3, 1>(0, 3) = gravity;
  left_ = g_hat - se23::c_matrix();
  right_ = se23::c_matrix() + se23::hat(nubar);
}

ReferenceSample ConstantInputReference::sample(double t) const {
  const Mat5 L = (t * left_).exp();
  const Mat5 Rt = (t * right_).exp();
  ReferenceSample s;
  s.t = t;
  s.X = se23::project_to_group(L * X0_.matrix() * Rt, 1e-6);
  s.nubar = nubar_;
  s.flat.block<3, 1>(0, 0) = s.X.p;
  s.flat.block<3, 1>(0, 1) = s.X.v;
  return s;
}

}  // namespace loglin::trajectory
