#pragma once

#include <functional>

#include <loglin/se23.hpp>

namespace loglin::sim {

/// Ambient vector field of the navigation kinematics,
/// X' = (ĝ - C) X + X (C + hat(nu)). Smooth on all 5x5 matrices.
Mat5 group_rhs(const Mat5& X, const se23::InputVector& nu, const Vec3& gravity);

/// Classical RK4 step for y' = f(t, y).
template <class State, class F>
State rk4_step(F&& f, double t, const State& y, double dt) {
  const State k1 = f(t, y);
  const State k2 = f(t + 0.5 * dt, State(y + (0.5 * dt) * k1));
  const State k3 = f(t + 0.5 * dt, State(y + (0.5 * dt) * k2));
  const State k4 = f(t + dt, State(y + dt * k3));
  return State(y + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4));
}

using InputFunction = std::function<se23::InputVector(double t, const Mat5& X)>;

/// One RK4 step of the kinematics in ambient coordinates followed by a
/// projection back onto the group.
se23::GroupState step_group(const se23::GroupState& X, double t, double dt,
                            const InputFunction& input, const Vec3& gravity);

/// One RK4 step of J w' + w x J w = M with constant moment M.
Vec3 step_omega(const Vec3& omega, const Mat3& inertia, const Vec3& moment, double dt);

}  // namespace loglin::sim
