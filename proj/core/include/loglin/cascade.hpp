#pragma once

// Cascade certification: the rate-error subsystem is certified first, and its
// bound enters the zeta system as the R-slot disturbance.

#include <string>

#include <loglin/control.hpp>
#include <loglin/group_set.hpp>
#include <loglin/invariant_set.hpp>

namespace loglin::synthesis {

/// Constant reference inputs the certificate is built for.
struct Envelope {
  Vec3 accel = Vec3::Zero();      // body specific force, m/s^2
  Vec3 omega = Vec3::Zero();      // body rate, rad/s
  Vec3 omega_dot = Vec3::Zero();  // informational, rad/s^2
};

/// Per-axis infinity-norm disturbance bounds.
struct DisturbanceBounds {
  Vec3 alpha = Vec3::Zero();         // angular acceleration, rad/s^2
  Vec3 accel = Vec3::Zero();         // specific force, m/s^2
  Vec3 omega_direct = Vec3::Zero();  // extra rate disturbance, rad/s
};

/// Diagonal LQR weights.
struct LqrWeights {
  Vec3 q_omega = Vec3::Ones();
  Vec3 r_omega = Vec3::Ones();
  Vec9 q_zeta = Vec9::Ones();
  Vec4 r_zeta = Vec4::Ones();
};

struct CertifyOptions {
  Objective objective = Objective::Trace;
  /// Re-certify the zeta set against the distortion of U(zeta) and the
  /// residual of the actuated inversion, sampled over the candidate set.
  bool refine = false;
  int max_iterations = 5;
  double rho_limit = 0.5;
  double inflation = 1.05;
  int refine_samples = 1500;
  int group_samples = 2000;
};

struct RefinementReport {
  bool enabled = false;
  bool converged = false;
  int iterations = 0;
  double rho = 0.0;
  Vec9 row_bounds = Vec9::Zero();
};

struct CertBundle {
  std::string name;
  VehicleParams vehicle;
  Envelope envelope;
  DisturbanceBounds bounds;
  LqrWeights weights;
  CertifyOptions options;

  Mat3 K_omega = Mat3::Zero();
  InvariantSet omega_set;
  /// Per-axis bound sqrt((P_ω⁻¹)_ii) in the reference frame.
  Vec3 omega_bound = Vec3::Zero();
  /// Max ‖e‖₂ over the rate-error set; frame independent, fed to the zeta system.
  double omega_radius = 0.0;

  Mat4x9 K_zeta = Mat4x9::Zero();
  InvariantSet zeta_set;
  RefinementReport refinement;
  GroupSetSummary group;

  se23::InputVector nubar() const { return se23::make_input(envelope.accel, envelope.omega); }
};

/// Nominal zeta-system disturbance rows (p, v, R) for a given rate radius.
Vec9 nominal_zeta_row_bounds(const DisturbanceBounds& bounds, double omega_radius);

/// Runs the full pipeline. Each stage raises InfeasibleError with the stage
/// name in the message on failure.
CertBundle certify_cascade(const VehicleParams& vehicle, const Envelope& envelope,
                           const DisturbanceBounds& bounds, const LqrWeights& weights,
                           const CertifyOptions& options = {}, std::string name = "scenario");

}  // namespace loglin::synthesis
