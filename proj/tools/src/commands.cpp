#include <loglin_cli/commands.hpp>

#include <CLI11.hpp>
#include <algorithm>
#include <filesystem>
#include <fstream>
#include <ostream>

#include <loglin/sim/monte_carlo.hpp>
#include <loglin_cli/bundle_io.hpp>
#include <loglin_cli/config.hpp>

namespace loglin::cli {

namespace fs = std::filesystem;
using sim::format_double;

namespace {

std::string output_dir(const CommandOptions& opt, const std::string& fallback) {
  const std::string dir = opt.out.empty() ? fallback : opt.out;
  fs::create_directories(dir);
  return dir;
}

std::ofstream open_out(const fs::path& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw Error("cannot open '" + path.string() + "' for writing");
  return os;
}

synthesis::CertBundle certify(const ScenarioConfig& cfg) {
  return synthesis::certify_cascade(cfg.vehicle, resolve_envelope(cfg), cfg.bounds, cfg.weights,
                                    cfg.certify, cfg.name);
}

void print_summary(std::ostream& out, const synthesis::CertBundle& b) {
  out << "scenario " << b.name << '\n';
  out << "  omega bound (per axis) " << format_double(b.omega_bound(0)) << ' '
      << format_double(b.omega_bound(1)) << ' ' << format_double(b.omega_bound(2)) << " rad/s\n";
  out << "  omega radius " << format_double(b.omega_radius) << " rad/s\n";
  out << "  zeta axis bounds";
  for (int i = 0; i < 9; ++i)
    out << ' ' << format_double(synthesis::ellipsoid_axis_bound(b.zeta_set.ellipsoid, i));
  out << '\n';
  out << "  group: position " << format_double(b.group.max_position_error) << " m, velocity "
      << format_double(b.group.max_velocity_error) << " m/s, angle "
      << format_double(b.group.max_rotation_angle) << " rad\n";
  out << "  certificate residuals " << format_double(synthesis::certificate_residual(b.omega_set))
      << ' ' << format_double(synthesis::certificate_residual(b.zeta_set)) << '\n';
  if (b.refinement.enabled)
    out << "  refinement: " << b.refinement.iterations << " iterations, rho "
        << format_double(b.refinement.rho) << '\n';
}

void write_run_summary(const fs::path& path, const sim::ContainmentReport& report) {
  std::ofstream os = open_out(path);
  os << "run,seed,max_v_zeta,max_v_omega,max_angle_err,max_pos_err_x,max_pos_err_y,"
        "max_pos_err_z,max_omega_err_x,max_omega_err_y,max_omega_err_z,diverged,contained\n";
  for (const auto& r : report.runs) {
    const auto& s = r.summary;
    os << r.run << ',' << r.seed << ',' << format_double(s.max_v_zeta) << ','
       << format_double(s.max_v_omega) << ',' << format_double(s.max_angle_err);
    for (int i = 0; i < 3; ++i) os << ',' << format_double(s.max_abs_pos_err(i));
    for (int i = 0; i < 3; ++i) os << ',' << format_double(s.max_abs_omega_err(i));
    os << ',' << r.diverged << ',' << r.contained << '\n';
  }
}

std::vector<std::string> history_files(const fs::path& dir, const std::string& name) {
  std::vector<std::string> files;
  if (!fs::is_directory(dir)) return files;
  const std::string prefix = name + "_history_run";
  for (const auto& entry : fs::directory_iterator(dir)) {
    const std::string f = entry.path().filename().string();
    if (f.rfind(prefix, 0) == 0 && entry.path().extension() == ".csv")
      files.push_back(entry.path().string());
  }
  std::sort(files.begin(), files.end());
  return files;
}

void write_hulls(std::ostream& os, const std::vector<Vec9>& coords) {
  os << "projection,dim,element,vertex,x,y,z\n";
  for (const auto& proj : synthesis::standard_projections_2d()) {
    const auto hull = synthesis::project_hull_2d(coords, proj);
    for (std::size_t i = 0; i < hull.size(); ++i)
      os << proj.name << ",2,0," << i << ',' << format_double(hull[i].x()) << ','
         << format_double(hull[i].y()) << ",\n";
  }
  for (const auto& proj : synthesis::standard_projections_3d()) {
    const auto hull = synthesis::project_hull_3d(coords, proj);
    for (std::size_t f = 0; f < hull.facets.size(); ++f)
      for (int k = 0; k < 3; ++k) {
        const Eigen::Vector3d& v =
            hull.vertices[static_cast<std::size_t>(hull.facets[f][static_cast<std::size_t>(k)])];
        os << proj.name << ",3," << f << ',' << k << ',' << format_double(v.x()) << ','
           << format_double(v.y()) << ',' << format_double(v.z()) << '\n';
      }
  }
}

}  // namespace

int cmd_certify(const CommandOptions& opt, std::ostream& out) {
  if (opt.config.empty()) throw ConfigError("certify requires --config");
  const ScenarioConfig cfg = load_config(opt.config);
  const auto bundle = certify(cfg);
  const fs::path dir = output_dir(opt, cfg.output_dir);
  const fs::path path = dir / (cfg.name + "_bundle.json");
  save_bundle(path.string(), bundle);
  print_summary(out, bundle);
  out << "wrote " << path.string() << '\n';
  return kOk;
}

int cmd_simulate(const CommandOptions& opt, std::ostream& out) {
  if (opt.config.empty()) throw ConfigError("simulate requires --config");
  ScenarioConfig cfg = load_config(opt.config);
  if (opt.seed) cfg.monte_carlo.seed = *opt.seed;
  if (opt.runs) {
    if (*opt.runs < 1) throw ConfigError("--runs must be at least 1");
    cfg.monte_carlo.runs = *opt.runs;
  }
  const fs::path dir = output_dir(opt, cfg.output_dir);
  synthesis::CertBundle bundle;
  if (opt.bundle.empty()) {
    bundle = certify(cfg);
    save_bundle((dir / (cfg.name + "_bundle.json")).string(), bundle);
  } else {
    bundle = load_bundle(opt.bundle);
  }
  const auto reference = make_reference(cfg);
  sim::MonteCarloOptions mc = cfg.monte_carlo;
  mc.keep_logs = true;
  const sim::ContainmentReport report = sim::monte_carlo(bundle, *reference, mc);
  for (const auto& log : report.logs)
    sim::write_history_csv(
        (dir / (cfg.name + "_history_run" + std::to_string(log.run) + ".csv")).string(), log);
  write_run_summary(dir / (cfg.name + "_runs.csv"), report);
  out << "runs " << report.runs.size() << ", violations " << report.violations
      << ", max zeta level " << format_double(report.worst.max_v_zeta) << ", max omega level "
      << format_double(report.worst.max_v_omega) << '\n';
  return report.violations == 0 ? kOk : kContainmentViolation;
}

int cmd_verify(const CommandOptions& opt, std::ostream& out) {
  if (opt.bundle.empty()) throw ConfigError("verify requires --bundle");
  const auto bundle = load_bundle(opt.bundle);
  std::vector<std::string> logs = opt.logs;
  if (logs.empty() && !opt.out.empty()) logs = history_files(opt.out, bundle.name);
  if (logs.empty()) throw ConfigError("verify: no history files given");
  int violations = 0;
  for (const auto& path : logs) {
    sim::SimLog log;
    try {
      log = sim::read_history_csv(path);
    } catch (const DomainError& e) {
      throw ConfigError(path + ": " + e.what());
    }
    const auto check = sim::verify_containment(bundle, log);
    if (!check.contained) ++violations;
    out << (check.contained ? "contained " : "VIOLATION ") << path << " zeta "
        << format_double(check.max_v_zeta) << " omega " << format_double(check.max_v_omega)
        << '\n';
  }
  out << logs.size() << " logs, " << violations << " violations\n";
  return violations == 0 ? kOk : kContainmentViolation;
}

int cmd_export(const CommandOptions& opt, std::ostream& out) {
  if (opt.bundle.empty()) throw ConfigError("export requires --bundle");
  const auto b = load_bundle(opt.bundle);
  const fs::path dir = output_dir(opt, "out");

  const auto group = synthesis::ellipsoid_to_group(b.zeta_set.ellipsoid, b.options.group_samples);
  std::vector<Vec9> algebra, grp;
  for (const auto& s : group.samples) {
    algebra.push_back(s.zeta);
    grp.push_back(s.group_coordinates());
  }
  {
    std::ofstream os = open_out(dir / (b.name + "_algebra_sets.csv"));
    write_hulls(os, algebra);
  }
  {
    std::ofstream os = open_out(dir / (b.name + "_group_sets.csv"));
    write_hulls(os, grp);
  }
  {
    std::ofstream os = open_out(dir / (b.name + "_bounds.csv"));
    os << "quantity,axis,bound\n";
    const char* axes[] = {"x", "y", "z"};
    for (int i = 0; i < 3; ++i) os << "omega_err," << axes[i] << ',' << format_double(b.omega_bound(i)) << '\n';
    const char* slots[] = {"zeta_p", "zeta_v", "zeta_R"};
    for (int i = 0; i < 9; ++i)
      os << slots[i / 3] << ',' << axes[i % 3] << ','
         << format_double(synthesis::ellipsoid_axis_bound(b.zeta_set.ellipsoid, i)) << '\n';
    for (int i = 0; i < 3; ++i)
      os << "pos_err," << axes[i] << ',' << format_double(group.summary.max_abs_position(i)) << '\n';
    for (int i = 0; i < 3; ++i)
      os << "vel_err," << axes[i] << ',' << format_double(group.summary.max_abs_velocity(i)) << '\n';
    os << "angle_err,norm," << format_double(group.summary.max_rotation_angle) << '\n';
  }
  out << "exported " << b.name << " to " << dir.string() << '\n';
  return kOk;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Log-linear dynamic inversion: certification and simulation"};
  app.require_subcommand(1);
  CommandOptions opt;
  std::uint64_t seed = 0;
  int runs = 0;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", opt.config, "Scenario JSON")->check(CLI::ExistingFile);
    sub->add_option("--bundle", opt.bundle, "Certificate bundle JSON")->check(CLI::ExistingFile);
    sub->add_option("--out", opt.out, "Output directory");
  };
  CLI::App* certify_cmd = app.add_subcommand("certify", "Synthesize gains and invariant sets");
  add_common(certify_cmd);
  CLI::App* simulate_cmd = app.add_subcommand("simulate", "Monte-Carlo closed-loop runs");
  add_common(simulate_cmd);
  auto* seed_opt = simulate_cmd->add_option("--seed", seed, "Base seed");
  auto* runs_opt = simulate_cmd->add_option("--runs", runs, "Number of runs");
  CLI::App* verify_cmd = app.add_subcommand("verify", "Check logged runs against a bundle");
  add_common(verify_cmd);
  verify_cmd->add_option("logs", opt.logs, "History CSV files");
  CLI::App* export_cmd = app.add_subcommand("export", "Write projected set hulls for plotting");
  add_common(export_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kConfigError;
  }
  if (seed_opt->count()) opt.seed = seed;
  if (runs_opt->count()) opt.runs = runs;

  try {
    if (certify_cmd->parsed()) return cmd_certify(opt, out);
    if (simulate_cmd->parsed()) return cmd_simulate(opt, out);
    if (verify_cmd->parsed()) return cmd_verify(opt, out);
    return cmd_export(opt, out);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const InfeasibleError& e) {
    err << "infeasible: " << e.what() << '\n';
    return kInfeasible;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kFailure;
  }
}

}  // namespace loglin::cli
