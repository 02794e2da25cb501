#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace loglin::cli {

enum ExitCode : int {
  kOk = 0,
  kFailure = 1,
  kConfigError = 2,
  kInfeasible = 3,
  kContainmentViolation = 4,
};

struct CommandOptions {
  std::string config;
  std::string bundle;
  std::string out;
  std::optional<std::uint64_t> seed;
  std::optional<int> runs;
  std::vector<std::string> logs;
};

/// certify: config -> <out>/<name>_bundle.json.
int cmd_certify(const CommandOptions& opt, std::ostream& out);
/// simulate: config (+ optional bundle) -> per-run history CSVs and a run
/// summary; exit 4 when any run leaves its certified set.
int cmd_simulate(const CommandOptions& opt, std::ostream& out);
/// verify: bundle + history CSVs -> containment report.
int cmd_verify(const CommandOptions& opt, std::ostream& out);
/// export: bundle -> projected set hulls and bound tables for plotting.
int cmd_export(const CommandOptions& opt, std::ostream& out);

/// Full command-line entry point; maps library errors to exit codes and
/// prints diagnostics on `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace loglin::cli
