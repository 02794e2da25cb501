#include <loglin_cli/bundle_io.hpp>

#include <fstream>

#include <loglin_cli/config.hpp>

namespace loglin::cli {

using nlohmann::json;

namespace {

template <class Derived>
json matrix_json(const Eigen::MatrixBase<Derived>& M) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < M.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < M.cols(); ++c) row.push_back(M(r, c));
    rows.push_back(row);
  }
  return rows;
}

template <class Derived>
json vector_json(const Eigen::MatrixBase<Derived>& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

Matrix matrix_from(const json& j, const std::string& key) {
  if (!j.is_array()) throw ConfigError("bundle: '" + key + "' must be a matrix");
  const auto rows = static_cast<Eigen::Index>(j.size());
  const auto cols = rows ? static_cast<Eigen::Index>(j[0].size()) : 0;
  Matrix M(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const json& row = j[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols)
      throw ConfigError("bundle: '" + key + "' has ragged rows");
    for (Eigen::Index c = 0; c < cols; ++c) M(r, c) = row[static_cast<std::size_t>(c)].get<double>();
  }
  return M;
}

Vector vector_from(const json& j, const std::string& key) {
  if (!j.is_array()) throw ConfigError("bundle: '" + key + "' must be an array");
  Vector v(static_cast<Eigen::Index>(j.size()));
  for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = j[static_cast<std::size_t>(i)].get<double>();
  return v;
}

template <class Fixed>
Fixed fixed_from(const json& j, const std::string& key) {
  Matrix M = Fixed::ColsAtCompileTime == 1 ? Matrix(vector_from(j, key)) : matrix_from(j, key);
  if (M.rows() != Fixed::RowsAtCompileTime || M.cols() != Fixed::ColsAtCompileTime)
    throw ConfigError("bundle: '" + key + "' has the wrong shape");
  return M;
}

json set_json(const synthesis::InvariantSet& s) {
  return {{"P", matrix_json(s.ellipsoid.P)},
          {"alpha", s.ellipsoid.alpha},
          {"A_cl", matrix_json(s.A_cl)},
          {"B", matrix_json(s.B)},
          {"channel_bounds", vector_json(s.channel_bounds)},
          {"W", matrix_json(s.W)}};
}

synthesis::InvariantSet set_from(const json& j, const std::string& key) {
  synthesis::InvariantSet s;
  s.ellipsoid.P = matrix_from(j.at("P"), key + ".P");
  s.ellipsoid.alpha = j.at("alpha").get<double>();
  s.A_cl = matrix_from(j.at("A_cl"), key + ".A_cl");
  s.B = matrix_from(j.at("B"), key + ".B");
  s.channel_bounds = vector_from(j.at("channel_bounds"), key + ".channel_bounds");
  s.W = matrix_from(j.at("W"), key + ".W");
  const auto n = s.ellipsoid.P.rows();
  if (s.ellipsoid.P.cols() != n || s.A_cl.rows() != n || s.A_cl.cols() != n || s.B.rows() != n ||
      s.B.cols() != s.channel_bounds.size() || s.W.rows() != s.B.cols() || s.W.cols() != s.B.cols())
    throw ConfigError("bundle: '" + key + "' has inconsistent dimensions");
  return s;
}

}  // namespace

json bundle_to_json(const synthesis::CertBundle& b) {
  json j;
  j["format"] = "loglin-bundle";
  j["version"] = 1;
  j["name"] = b.name;
  j["vehicle"] = {{"inertia", matrix_json(b.vehicle.inertia)},
                  {"mass", b.vehicle.mass},
                  {"gravity", vector_json(b.vehicle.gravity)}};
  j["envelope"] = {{"accel", vector_json(b.envelope.accel)},
                   {"omega", vector_json(b.envelope.omega)},
                   {"omega_dot", vector_json(b.envelope.omega_dot)}};
  j["bounds"] = {{"alpha", vector_json(b.bounds.alpha)},
                 {"accel", vector_json(b.bounds.accel)},
                 {"omega_direct", vector_json(b.bounds.omega_direct)}};
  j["weights"] = {{"q_omega", vector_json(b.weights.q_omega)},
                  {"r_omega", vector_json(b.weights.r_omega)},
                  {"q_zeta", vector_json(b.weights.q_zeta)},
                  {"r_zeta", vector_json(b.weights.r_zeta)}};
  j["options"] = {{"objective", b.options.objective == synthesis::Objective::Trace ? "trace" : "logdet"},
                  {"refine", b.options.refine},
                  {"max_iterations", b.options.max_iterations},
                  {"rho_limit", b.options.rho_limit},
                  {"inflation", b.options.inflation},
                  {"refine_samples", b.options.refine_samples},
                  {"group_samples", b.options.group_samples}};
  j["K_omega"] = matrix_json(b.K_omega);
  j["omega_set"] = set_json(b.omega_set);
  j["omega_bound"] = vector_json(b.omega_bound);
  j["omega_radius"] = b.omega_radius;
  j["K_zeta"] = matrix_json(b.K_zeta);
  j["zeta_set"] = set_json(b.zeta_set);
  j["refinement"] = {{"enabled", b.refinement.enabled},
                     {"converged", b.refinement.converged},
                     {"iterations", b.refinement.iterations},
                     {"rho", b.refinement.rho},
                     {"row_bounds", vector_json(b.refinement.row_bounds)}};
  j["group"] = {{"max_position_error", b.group.max_position_error},
                {"max_velocity_error", b.group.max_velocity_error},
                {"max_rotation_angle", b.group.max_rotation_angle},
                {"max_abs_position", vector_json(b.group.max_abs_position)},
                {"max_abs_velocity", vector_json(b.group.max_abs_velocity)}};
  return j;
}

synthesis::CertBundle bundle_from_json(const json& j) {
  if (!j.is_object() || j.value("format", "") != "loglin-bundle")
    throw ConfigError("bundle: not a loglin bundle");
  synthesis::CertBundle b;
  try {
    b.name = j.at("name").get<std::string>();
    const json& v = j.at("vehicle");
    b.vehicle.inertia = fixed_from<Mat3>(v.at("inertia"), "vehicle.inertia");
    b.vehicle.mass = v.at("mass").get<double>();
    b.vehicle.gravity = fixed_from<Vec3>(v.at("gravity"), "vehicle.gravity");
    const json& e = j.at("envelope");
    b.envelope.accel = fixed_from<Vec3>(e.at("accel"), "envelope.accel");
    b.envelope.omega = fixed_from<Vec3>(e.at("omega"), "envelope.omega");
    b.envelope.omega_dot = fixed_from<Vec3>(e.at("omega_dot"), "envelope.omega_dot");
    const json& d = j.at("bounds");
    b.bounds.alpha = fixed_from<Vec3>(d.at("alpha"), "bounds.alpha");
    b.bounds.accel = fixed_from<Vec3>(d.at("accel"), "bounds.accel");
    b.bounds.omega_direct = fixed_from<Vec3>(d.at("omega_direct"), "bounds.omega_direct");
    const json& w = j.at("weights");
    b.weights.q_omega = fixed_from<Vec3>(w.at("q_omega"), "weights.q_omega");
    b.weights.r_omega = fixed_from<Vec3>(w.at("r_omega"), "weights.r_omega");
    b.weights.q_zeta = fixed_from<Vec9>(w.at("q_zeta"), "weights.q_zeta");
    b.weights.r_zeta = fixed_from<Vec4>(w.at("r_zeta"), "weights.r_zeta");
    const json& o = j.at("options");
    b.options.objective = o.at("objective").get<std::string>() == "logdet"
                              ? synthesis::Objective::LogDet
                              : synthesis::Objective::Trace;
    b.options.refine = o.at("refine").get<bool>();
    b.options.max_iterations = o.at("max_iterations").get<int>();
    b.options.rho_limit = o.at("rho_limit").get<double>();
    b.options.inflation = o.at("inflation").get<double>();
    b.options.refine_samples = o.at("refine_samples").get<int>();
    b.options.group_samples = o.at("group_samples").get<int>();
    b.K_omega = fixed_from<Mat3>(j.at("K_omega"), "K_omega");
    b.omega_set = set_from(j.at("omega_set"), "omega_set");
    b.omega_bound = fixed_from<Vec3>(j.at("omega_bound"), "omega_bound");
    b.omega_radius = j.at("omega_radius").get<double>();
    b.K_zeta = fixed_from<Mat4x9>(j.at("K_zeta"), "K_zeta");
    b.zeta_set = set_from(j.at("zeta_set"), "zeta_set");
    const json& r = j.at("refinement");
    b.refinement.enabled = r.at("enabled").get<bool>();
    b.refinement.converged = r.at("converged").get<bool>();
    b.refinement.iterations = r.at("iterations").get<int>();
    b.refinement.rho = r.at("rho").get<double>();
    b.refinement.row_bounds = fixed_from<Vec9>(r.at("row_bounds"), "refinement.row_bounds");
    const json& g = j.at("group");
    b.group.max_position_error = g.at("max_position_error").get<double>();
    b.group.max_velocity_error = g.at("max_velocity_error").get<double>();
    b.group.max_rotation_angle = g.at("max_rotation_angle").get<double>();
    b.group.max_abs_position = fixed_from<Vec3>(g.at("max_abs_position"), "group.max_abs_position");
    b.group.max_abs_velocity = fixed_from<Vec3>(g.at("max_abs_velocity"), "group.max_abs_velocity");
  } catch (const json::exception& e) {
    throw ConfigError(std::string("bundle: ") + e.what());
  }
  if (b.omega_set.ellipsoid.P.rows() != 3 || b.zeta_set.ellipsoid.P.rows() != 9)
    throw ConfigError("bundle: set dimensions must be 3 and 9");
  return b;
}

void save_bundle(const std::string& path, const synthesis::CertBundle& b) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw Error("cannot open '" + path + "' for writing");
  os << bundle_to_json(b).dump(2) << '\n';
  if (!os) throw Error("write failed for '" + path + "'");
}

synthesis::CertBundle load_bundle(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw ConfigError("cannot open bundle '" + path + "'");
  json j;
  try {
    j = json::parse(is);
  } catch (const json::parse_error& e) {
    throw ConfigError("bundle '" + path + "': " + e.what());
  }
  return bundle_from_json(j);
}

}  // namespace loglin::cli
