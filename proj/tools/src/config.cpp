#include <loglin_cli/config.hpp>

#include <fstream>
#include <set>

namespace loglin::cli {

using nlohmann::json;

namespace {

void check_keys(const json& j, const std::string& where, const std::set<std::string>& allowed) {
  if (!j.is_object()) throw ConfigError(where + ": expected an object");
  for (const auto& [key, value] : j.items())
    if (!allowed.count(key)) throw ConfigError("unknown key '" + where + key + "'");
}

double number(const json& j, const std::string& key) {
  if (!j.is_number()) throw ConfigError("'" + key + "' must be a number");
  return j.get<double>();
}

Vector vector_of(const json& j, const std::string& key, Eigen::Index n, bool allow_scalar) {
  if (allow_scalar && j.is_number()) return Vector::Constant(n, j.get<double>());
  if (!j.is_array() || static_cast<Eigen::Index>(j.size()) != n)
    throw ConfigError("'" + key + "' must be an array of " + std::to_string(n) + " numbers" +
                      (allow_scalar ? " or a number" : ""));
  Vector v(n);
  for (Eigen::Index i = 0; i < n; ++i) v(i) = number(j[static_cast<std::size_t>(i)], key);
  return v;
}

Vec3 vec3(const json& j, const std::string& key, bool allow_scalar = false) {
  return vector_of(j, key, 3, allow_scalar);
}

std::vector<double> doubles(const json& j, const std::string& key) {
  if (!j.is_array()) throw ConfigError("'" + key + "' must be an array");
  std::vector<double> out;
  for (const auto& x : j) out.push_back(number(x, key));
  return out;
}

void parse_vehicle(const json& j, ScenarioConfig& cfg) {
  check_keys(j, "vehicle.", {"inertia", "mass", "gravity"});
  if (j.contains("inertia")) {
    const json& in = j["inertia"];
    if (in.is_array() && in.size() == 3 && in[0].is_array()) {
      for (int r = 0; r < 3; ++r)
        cfg.vehicle.inertia.row(r) = vec3(in[static_cast<std::size_t>(r)], "vehicle.inertia").transpose();
    } else {
      cfg.vehicle.inertia = vec3(in, "vehicle.inertia").asDiagonal();
    }
  }
  if (j.contains("mass")) cfg.vehicle.mass = number(j["mass"], "vehicle.mass");
  if (j.contains("gravity")) cfg.vehicle.gravity = vec3(j["gravity"], "vehicle.gravity");
}

void parse_reference(const json& j, ScenarioConfig& cfg) {
  if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string())
    throw ConfigError("reference.kind is required (constant_input or min_snap)");
  const std::string kind = j["kind"].get<std::string>();
  ReferenceConfig& r = cfg.reference;
  if (kind == "constant_input") {
    check_keys(j, "reference.", {"kind", "accel", "omega"});
    r.kind = ReferenceConfig::Kind::ConstantInput;
    if (j.contains("accel")) r.accel = vec3(j["accel"], "reference.accel");
    if (j.contains("omega")) r.omega = vec3(j["omega"], "reference.omega");
  } else if (kind == "min_snap") {
    check_keys(j, "reference.", {"kind", "waypoints", "times", "yaw"});
    r.kind = ReferenceConfig::Kind::MinSnap;
    if (!j.contains("waypoints") || !j["waypoints"].is_array())
      throw ConfigError("reference.waypoints must be an array of [x, y, z]");
    for (const auto& w : j["waypoints"]) r.waypoints.push_back(vec3(w, "reference.waypoints"));
    if (!j.contains("times")) throw ConfigError("reference.times is required for min_snap");
    r.times = doubles(j["times"], "reference.times");
    if (j.contains("yaw")) r.yaw = doubles(j["yaw"], "reference.yaw");
  } else {
    throw ConfigError("reference.kind '" + kind + "' is not constant_input or min_snap");
  }
}

void parse_disturbance(const json& j, ScenarioConfig& cfg) {
  check_keys(j, "disturbance.",
             {"accel_bound", "alpha_bound", "omega_bound", "family", "freq_min", "freq_max"});
  auto& spec = cfg.monte_carlo.disturbance;
  if (j.contains("accel_bound"))
    cfg.bounds.accel = vec3(j["accel_bound"], "disturbance.accel_bound", true);
  if (j.contains("alpha_bound"))
    cfg.bounds.alpha = vec3(j["alpha_bound"], "disturbance.alpha_bound", true);
  if (j.contains("omega_bound"))
    cfg.bounds.omega_direct = vec3(j["omega_bound"], "disturbance.omega_bound", true);
  if (j.contains("family")) {
    if (!j["family"].is_string()) throw ConfigError("'disturbance.family' must be a string");
    try {
      spec.family = sim::parse_family(j["family"].get<std::string>());
    } catch (const DomainError& e) {
      throw ConfigError(std::string("disturbance.family: ") + e.what());
    }
  }
  if (j.contains("freq_min")) spec.freq_min = number(j["freq_min"], "disturbance.freq_min");
  if (j.contains("freq_max")) spec.freq_max = number(j["freq_max"], "disturbance.freq_max");
  spec.accel_bound = cfg.bounds.accel;
  spec.alpha_bound = cfg.bounds.alpha;
}

void parse_certification(const json& j, ScenarioConfig& cfg) {
  check_keys(j, "certification.", {"objective", "refine", "max_iterations", "rho_limit",
                                   "inflation", "refine_samples", "group_samples"});
  auto& o = cfg.certify;
  if (j.contains("objective")) {
    const std::string s = j["objective"].is_string() ? j["objective"].get<std::string>() : "";
    if (s == "trace") o.objective = synthesis::Objective::Trace;
    else if (s == "logdet") o.objective = synthesis::Objective::LogDet;
    else throw ConfigError("certification.objective must be 'trace' or 'logdet'");
  }
  if (j.contains("refine")) {
    if (!j["refine"].is_boolean()) throw ConfigError("'certification.refine' must be a boolean");
    o.refine = j["refine"].get<bool>();
  }
  if (j.contains("max_iterations"))
    o.max_iterations = static_cast<int>(number(j["max_iterations"], "certification.max_iterations"));
  if (j.contains("rho_limit")) o.rho_limit = number(j["rho_limit"], "certification.rho_limit");
  if (j.contains("inflation")) o.inflation = number(j["inflation"], "certification.inflation");
  if (j.contains("refine_samples"))
    o.refine_samples = static_cast<int>(number(j["refine_samples"], "certification.refine_samples"));
  if (j.contains("group_samples"))
    o.group_samples = static_cast<int>(number(j["group_samples"], "certification.group_samples"));
  if (o.max_iterations < 1 || !(o.inflation >= 1.0) || !(o.rho_limit > 0.0) ||
      o.refine_samples < 1 || o.group_samples < 1)
    throw ConfigError("certification: iteration/sample counts must be positive and inflation >= 1");
}

void parse_simulation(const json& j, ScenarioConfig& cfg) {
  check_keys(j, "simulation.", {"dt", "duration", "runs", "seed", "initial_offset", "inversion",
                                "record_stride"});
  auto& mc = cfg.monte_carlo;
  if (j.contains("dt")) mc.sim.dt = number(j["dt"], "simulation.dt");
  if (j.contains("duration")) mc.sim.duration = number(j["duration"], "simulation.duration");
  if (j.contains("runs")) mc.runs = static_cast<int>(number(j["runs"], "simulation.runs"));
  if (j.contains("seed")) {
    if (!j["seed"].is_number_unsigned()) throw ConfigError("'simulation.seed' must be a non-negative integer");
    mc.seed = j["seed"].get<std::uint64_t>();
  }
  if (j.contains("initial_offset"))
    mc.sim.initial_zeta = vector_of(j["initial_offset"], "simulation.initial_offset", 9, false);
  if (j.contains("inversion")) {
    try {
      mc.sim.inversion = sim::parse_inversion(j["inversion"].get<std::string>());
    } catch (const std::exception& e) {
      throw ConfigError(std::string("simulation.inversion: ") + e.what());
    }
  }
  if (j.contains("record_stride"))
    mc.sim.record_stride = static_cast<int>(number(j["record_stride"], "simulation.record_stride"));
  if (mc.runs < 1) throw ConfigError("simulation.runs must be at least 1");
}

}  // namespace

ScenarioConfig parse_config(const json& j) {
  check_keys(j, "", {"name", "vehicle", "reference", "envelope", "lqr", "disturbance",
                     "certification", "simulation", "output"});
  ScenarioConfig cfg;
  cfg.monte_carlo.sim.record_stride = 10;
  if (j.contains("name")) {
    if (!j["name"].is_string() || j["name"].get<std::string>().empty())
      throw ConfigError("'name' must be a non-empty string");
    cfg.name = j["name"].get<std::string>();
  }
  if (j.contains("vehicle")) parse_vehicle(j["vehicle"], cfg);
  if (!j.contains("reference")) throw ConfigError("'reference' is required");
  parse_reference(j["reference"], cfg);
  if (j.contains("envelope")) {
    const json& e = j["envelope"];
    check_keys(e, "envelope.", {"accel", "omega", "omega_dot"});
    cfg.envelope_override = true;
    if (e.contains("accel")) cfg.envelope.accel = vec3(e["accel"], "envelope.accel");
    if (e.contains("omega")) cfg.envelope.omega = vec3(e["omega"], "envelope.omega");
    if (e.contains("omega_dot")) cfg.envelope.omega_dot = vec3(e["omega_dot"], "envelope.omega_dot");
  }
  if (j.contains("lqr")) {
    const json& l = j["lqr"];
    check_keys(l, "lqr.", {"q_omega", "r_omega", "q_zeta", "r_zeta"});
    if (l.contains("q_omega")) cfg.weights.q_omega = vec3(l["q_omega"], "lqr.q_omega", true);
    if (l.contains("r_omega")) cfg.weights.r_omega = vec3(l["r_omega"], "lqr.r_omega", true);
    if (l.contains("q_zeta")) cfg.weights.q_zeta = vector_of(l["q_zeta"], "lqr.q_zeta", 9, true);
    if (l.contains("r_zeta")) cfg.weights.r_zeta = vector_of(l["r_zeta"], "lqr.r_zeta", 4, true);
    if (cfg.weights.q_omega.minCoeff() < 0 || cfg.weights.q_zeta.minCoeff() < 0 ||
        cfg.weights.r_omega.minCoeff() <= 0 || cfg.weights.r_zeta.minCoeff() <= 0)
      throw ConfigError("lqr: Q weights must be non-negative and R weights positive");
  }
  if (j.contains("disturbance")) parse_disturbance(j["disturbance"], cfg);
  if (j.contains("certification")) parse_certification(j["certification"], cfg);
  if (j.contains("simulation")) parse_simulation(j["simulation"], cfg);
  if (j.contains("output")) {
    check_keys(j["output"], "output.", {"dir"});
    if (j["output"].contains("dir")) {
      if (!j["output"]["dir"].is_string()) throw ConfigError("'output.dir' must be a string");
      cfg.output_dir = j["output"]["dir"].get<std::string>();
    }
  }
  try {
    cfg.vehicle.validate();
    cfg.monte_carlo.disturbance.validate();
    cfg.monte_carlo.sim.validate();
  } catch (const DomainError& e) {
    throw ConfigError(e.what());
  }
  if ((cfg.bounds.omega_direct.array() < 0).any())
    throw ConfigError("disturbance.omega_bound must be non-negative");
  return cfg;
}

ScenarioConfig load_config(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw ConfigError("cannot open config '" + path + "'");
  json j;
  try {
    j = json::parse(is);
  } catch (const json::parse_error& e) {
    throw ConfigError("config '" + path + "': " + e.what());
  }
  return parse_config(j);
}

std::unique_ptr<trajectory::Reference> make_reference(const ScenarioConfig& cfg) {
  const ReferenceConfig& r = cfg.reference;
  try {
    if (r.kind == ReferenceConfig::Kind::ConstantInput)
      return std::make_unique<trajectory::ConstantInputReference>(
          se23::GroupState{}, se23::make_input(r.accel, r.omega), cfg.vehicle.gravity);
    return std::make_unique<trajectory::FlatReference>(
        trajectory::min_snap(r.waypoints, r.times, r.yaw), cfg.vehicle.mass, cfg.vehicle.gravity);
  } catch (const DomainError& e) {
    throw ConfigError(std::string("reference: ") + e.what());
  }
}

synthesis::Envelope resolve_envelope(const ScenarioConfig& cfg) {
  if (cfg.envelope_override) return cfg.envelope;
  synthesis::Envelope env;
  if (cfg.reference.kind == ReferenceConfig::Kind::ConstantInput) {
    env.accel = cfg.reference.accel;
    env.omega = cfg.reference.omega;
    return env;
  }
  const auto traj = trajectory::min_snap(cfg.reference.waypoints, cfg.reference.times,
                                         cfg.reference.yaw);
  const auto e = trajectory::reference_envelope(traj, cfg.vehicle.mass, cfg.vehicle.gravity);
  env.accel = e.accel;
  env.omega = e.omega;
  env.omega_dot = e.omega_dot;
  return env;
}

}  // namespace loglin::cli
