#pragma once

#include <cstdint>
#include <vector>

#include <loglin/sim/closed_loop.hpp>

namespace loglin::sim {

struct MonteCarloOptions {
  int runs = 100;
  std::uint64_t seed = 1;
  DisturbanceSpec disturbance;
  SimOptions sim;
  double tol = 1e-6;
  bool keep_logs = false;
};

struct RunSummary {
  int run = 0;
  std::uint64_t seed = 0;
  SimSummary summary;
  bool diverged = false;
  bool contained = false;
};

struct ContainmentReport {
  std::vector<RunSummary> runs;  // ordered by run index
  std::vector<SimLog> logs;      // filled when keep_logs is set
  int violations = 0;
  SimSummary worst;  // element-wise maxima over runs
};

/// Runs are independent; run k uses derive_seed(seed, k).
ContainmentReport monte_carlo(const synthesis::CertBundle& cert,
                              const trajectory::Reference& reference,
                              const MonteCarloOptions& options);

}  // namespace loglin::sim
