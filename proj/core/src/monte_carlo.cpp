#include <loglin/sim/monte_carlo.hpp>

namespace loglin::sim {

namespace {

void merge(SimSummary& into, const SimSummary& s) {
  into.max_v_zeta = std::max(into.max_v_zeta, s.max_v_zeta);
  into.max_v_omega = std::max(into.max_v_omega, s.max_v_omega);
  into.max_abs_zeta = into.max_abs_zeta.cwiseMax(s.max_abs_zeta);
  into.max_abs_omega_err = into.max_abs_omega_err.cwiseMax(s.max_abs_omega_err);
  into.max_abs_pos_err = into.max_abs_pos_err.cwiseMax(s.max_abs_pos_err);
  into.max_abs_vel_err = into.max_abs_vel_err.cwiseMax(s.max_abs_vel_err);
  into.max_angle_err = std::max(into.max_angle_err, s.max_angle_err);
}

}  // namespace

ContainmentReport monte_carlo(const synthesis::CertBundle& cert,
                              const trajectory::Reference& reference,
                              const MonteCarloOptions& options) {
  if (options.runs < 1) throw DomainError("monte_carlo: runs must be at least 1");
  options.disturbance.validate();
  options.sim.validate();

  ContainmentReport report;
  report.runs.resize(static_cast<std::size_t>(options.runs));
  if (options.keep_logs) report.logs.resize(report.runs.size());

  SimOptions sim = options.sim;
  if (!options.keep_logs) sim.record_stride = 0;

  // Each run owns its disturbance and log; results land at their own index.
  for (int k = 0; k < options.runs; ++k) {
    const std::uint64_t seed = derive_seed(options.seed, static_cast<std::uint64_t>(k));
    const Disturbance d = Disturbance::sample(options.disturbance, seed);
    SimLog log = run_closed_loop(cert, reference, d, sim);
    log.run = k;
    log.seed = seed;

    RunSummary& rs = report.runs[static_cast<std::size_t>(k)];
    rs.run = k;
    rs.seed = seed;
    rs.summary = log.summary;
    rs.diverged = log.diverged;
    rs.contained = !log.diverged && log.summary.max_v_zeta <= 1.0 + options.tol &&
                   log.summary.max_v_omega <= 1.0 + options.tol;
    if (options.keep_logs) report.logs[static_cast<std::size_t>(k)] = std::move(log);
  }

  for (const RunSummary& rs : report.runs) {
    if (!rs.contained) ++report.violations;
    merge(report.worst, rs.summary);
  }
  return report;
}

}  // namespace loglin::sim
