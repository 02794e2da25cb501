#include <loglin/sim/integrator.hpp>

#include <Eigen/LU>

namespace loglin::sim {

Mat5 group_rhs(const Mat5& X, const se23::InputVector& nu, const Vec3& gravity) {
  Mat5 left = -se23::c_matrix();
  left.block<3, 1>(0, 3) = gravity;
  return left * X + X * (se23::c_matrix() + se23::hat(nu));
}

se23::GroupState step_group(const se23::GroupState& X, double t, double dt,
                            const InputFunction& input, const Vec3& gravity) {
  auto f = [&](double s, const Mat5& Y) -> Mat5 { return group_rhs(Y, input(s, Y), gravity); };
  return se23::project_to_group(rk4_step<Mat5>(f, t, X.matrix(), dt));
}

Vec3 step_omega(const Vec3& omega, const Mat3& inertia, const Vec3& moment, double dt) {
  const Mat3 Jinv = inertia.inverse();
  auto f = [&](double, const Vec3& w) -> Vec3 {
    return Jinv * (moment - w.cross(inertia * w));
  };
  return rk4_step<Vec3>(f, 0.0, omega, dt);
}

}  // namespace loglin::sim
