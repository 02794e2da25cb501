#pragma once

#include <array>
#include <memory>
#include <vector>

#include <loglin/se23.hpp>

namespace loglin::trajectory {

/// One 7th-order polynomial per flat output (x, y, z, yaw) in normalized
/// time tau = (t - start) / duration.
struct PolySegment {
  double start = 0.0;
  double duration = 1.0;
  std::array<Eigen::Matrix<double, 8, 1>, 4> coeffs{};

  /// d^order/dt^order of the four flat outputs at absolute time t.
  Vec4 evaluate(double t, int order) const;
};

class Trajectory {
 public:
  Trajectory() = default;
  explicit Trajectory(std::vector<PolySegment> segments);

  double start_time() const;
  double end_time() const;
  const std::vector<PolySegment>& segments() const { return segments_; }

  /// Derivatives 0..4 of the flat outputs; column k holds order k. Outside
  /// the time span the endpoint position is held with zero derivatives.
  Eigen::Matrix<double, 4, 5> derivatives(double t) const;

  /// ∫ ‖snap‖² dt over x, y, z.
  double snap_cost() const;

 private:
  std::vector<PolySegment> segments_;
};

/// Minimum-snap interpolation through waypoints at the given times, at rest
/// (zero velocity, acceleration, jerk) at both ends, with position through
/// snap continuous at interior waypoints. `yaw` is optional (defaults to 0).
/// Throws DomainError for fewer than two waypoints or non-increasing times.
Trajectory min_snap(const std::vector<Vec3>& waypoints, const std::vector<double>& times,
                    const std::vector<double>& yaw = {});

namespace detail {
/// Equality constraints (without right-hand side) and the block-diagonal
/// snap-cost Hessian of one axis, in normalized-time coefficients.
Matrix min_snap_constraint_matrix(const std::vector<double>& durations);
Matrix min_snap_cost_matrix(const std::vector<double>& durations);
}  // namespace detail

struct ReferenceSample {
  double t = 0.0;
  se23::GroupState X;
  se23::InputVector nubar = se23::InputVector::Zero();
  Vec3 omega_dot = Vec3::Zero();
  /// Flat-output derivatives (x, y, z, yaw) of orders 0..4.
  Eigen::Matrix<double, 4, 5> flat = Eigen::Matrix<double, 4, 5>::Zero();
  double thrust = 0.0;  // N

  Vec3 accel() const { return se23::slot_v(nubar); }
  Vec3 omega() const { return se23::slot_R(nubar); }
};

/// Differential-flatness map: body z along (a - g), yaw from the flat
/// output, body specific force Rᵀ(a - g), rates from jerk and their
/// derivative from snap. Throws DomainError near free fall (|a - g| <= 1e-6).
ReferenceSample flatness_reference(const Trajectory& traj, double t, double mass, const Vec3& gravity);

struct EnvelopeSample {
  Vec3 accel = Vec3::Zero();
  Vec3 omega = Vec3::Zero();
  Vec3 omega_dot = Vec3::Zero();
};

/// Per-axis maxima of |abar|, |omegabar|, |omegabar'| sampled at 1 kHz, with
/// a 5% margin.
EnvelopeSample reference_envelope(const Trajectory& traj, double mass, const Vec3& gravity);

/// Time-parameterized reference consumed by the simulator.
class Reference {
 public:
  virtual ~Reference() = default;
  virtual ReferenceSample sample(double t) const = 0;
};

class FlatReference final : public Reference {
 public:
  FlatReference(Trajectory traj, double mass, const Vec3& gravity);
  ReferenceSample sample(double t) const override;
  const Trajectory& trajectory() const { return traj_; }

 private:
  Trajectory traj_;
  double mass_;
  Vec3 gravity_;
};

/// Reference driven by a constant input: X(t) = exp(t(ĝ - C)) X0 exp(t(C + hat(nubar))).
class ConstantInputReference final : public Reference {
 public:
  ConstantInputReference(const se23::GroupState& X0, const se23::InputVector& nubar,
                         const Vec3& gravity);
  ReferenceSample sample(double t) const override;

 private:
  se23::GroupState X0_;
  se23::InputVector nubar_;
  Mat5 left_;
  Mat5 right_;
};

}  // namespace loglin::trajectory
