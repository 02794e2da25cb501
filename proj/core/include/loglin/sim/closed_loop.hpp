#pragma once

#include <loglin/cascade.hpp>
#include <loglin/sim/disturbance.hpp>
#include <loglin/sim/sim_log.hpp>
#include <loglin/trajectory.hpp>

namespace loglin::sim {

enum class Inversion {
  /// Four actuated channels only; exact in the actuated rows.
  Actuated,
  /// Full 9-dimensional input including the p-slot; exact cancellation.
  Lifted,
};

Inversion parse_inversion(const std::string& name);
std::string to_string(Inversion mode);

struct SimOptions {
  double dt = 1e-3;
  double duration = 10.0;
  Vec9 initial_zeta = Vec9::Zero();
  Inversion inversion = Inversion::Lifted;
  /// Keep every n-th step in the log (0 keeps none; the summary is always kept).
  int record_stride = 1;

  void validate() const;
};

/// Nonlinear closed loop: rigid-body kinematics on SE_2(3) with Euler
/// rotational dynamics, the zeta-level inversion as outer loop and the rate
/// tracking law as inner loop. The run starts with eta = exp(initial_zeta)
/// and zero rate error. A trajectory leaving the log chart ends the run with
/// `diverged` set.
SimLog run_closed_loop(const synthesis::CertBundle& cert, const trajectory::Reference& reference,
                       const Disturbance& disturbance, const SimOptions& options);

}  // namespace loglin::sim
