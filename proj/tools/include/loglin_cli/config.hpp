#pragma once

#include <memory>
#include <string>
#include <vector>

#include <json.hpp>

#include <loglin/cascade.hpp>
#include <loglin/sim/monte_carlo.hpp>
#include <loglin/trajectory.hpp>

namespace loglin::cli {

/// Malformed or inconsistent scenario configuration.
class ConfigError : public Error {
 public:
  using Error::Error;
};

struct ReferenceConfig {
  enum class Kind { ConstantInput, MinSnap } kind = Kind::ConstantInput;
  // constant_input
  Vec3 accel = Vec3::Zero();
  Vec3 omega = Vec3::Zero();
  // min_snap
  std::vector<Vec3> waypoints;
  std::vector<double> times;
  std::vector<double> yaw;
};

struct ScenarioConfig {
  std::string name = "scenario";
  synthesis::VehicleParams vehicle;
  ReferenceConfig reference;
  bool envelope_override = false;
  synthesis::Envelope envelope;
  synthesis::DisturbanceBounds bounds;
  synthesis::LqrWeights weights;
  synthesis::CertifyOptions certify;
  sim::MonteCarloOptions monte_carlo;
  std::string output_dir = "out";
};

/// Parses a scenario. Unknown keys and wrong shapes raise ConfigError naming
/// the offending key path.
ScenarioConfig parse_config(const nlohmann::json& j);
ScenarioConfig load_config(const std::string& path);

/// Builds the reference the scenario flies.
std::unique_ptr<trajectory::Reference> make_reference(const ScenarioConfig& cfg);

/// Envelope the certificate is built for: the override when present, else
/// the constant input itself or the sampled envelope of the trajectory.
synthesis::Envelope resolve_envelope(const ScenarioConfig& cfg);

}  // namespace loglin::cli
