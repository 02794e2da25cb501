#include <loglin/sim/sim_log.hpp>

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace loglin::sim {

void SimSummary::update(const SimRecord& r) {
  max_v_zeta = std::max(max_v_zeta, r.v_zeta);
  max_v_omega = std::max(max_v_omega, r.v_omega);
  max_abs_zeta = max_abs_zeta.cwiseMax(r.zeta.cwiseAbs());
  max_abs_omega_err = max_abs_omega_err.cwiseMax(r.omega_err.cwiseAbs());
  max_abs_pos_err = max_abs_pos_err.cwiseMax(r.pos_err.cwiseAbs());
  max_abs_vel_err = max_abs_vel_err.cwiseMax(r.vel_err.cwiseAbs());
  max_angle_err = std::max(max_angle_err, se23::slot_R(r.zeta).norm());
}

const std::vector<std::string>& history_columns() {
  static const std::vector<std::string> cols = [] {
    std::vector<std::string> c{"t"};
    for (const char* slot : {"p", "v", "R"})
      for (const char* ax : {"x", "y", "z"}) c.push_back(std::string("zeta_") + slot + "_" + ax);
    for (const char* ax : {"x", "y", "z"}) c.push_back(std::string("omega_err_") + ax);
    c.push_back("v_zeta");
    c.push_back("v_omega");
    for (const char* n : {"u_thrust", "u_wx", "u_wy", "u_wz"}) c.push_back(n);
    for (const char* pre : {"d_accel_", "d_alpha_", "pos_err_", "vel_err_"})
      for (const char* ax : {"x", "y", "z"}) c.push_back(std::string(pre) + ax);
    return c;
  }();
  return cols;
}

std::string format_double(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

namespace {

void put(std::ostream& os, double x) { os << ',' << format_double(x); }

template <class V>
void put_all(std::ostream& os, const V& v) {
  for (Eigen::Index i = 0; i < v.size(); ++i) put(os, v(i));
}

double parse_double(const std::string& s, int line) {
  double x = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), x);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
    std::ostringstream os;
    os << "history csv line " << line << ": cannot parse '" << s << "'";
    throw DomainError(os.str());
  }
  return x;
}

}  // namespace

void write_history_csv(std::ostream& os, const SimLog& log) {
  os << "# name: " << log.name << '\n';
  os << "# run: " << log.run << '\n';
  os << "# seed: " << log.seed << '\n';
  const auto& cols = history_columns();
  for (std::size_t i = 0; i < cols.size(); ++i) os << (i ? "," : "") << cols[i];
  os << '\n';
  for (const SimRecord& r : log.records) {
    os << format_double(r.t);
    put_all(os, r.zeta);
    put_all(os, r.omega_err);
    put(os, r.v_zeta);
    put(os, r.v_omega);
    put_all(os, r.u);
    put_all(os, r.d_accel);
    put_all(os, r.d_alpha);
    put_all(os, r.pos_err);
    put_all(os, r.vel_err);
    os << '\n';
  }
}

void write_history_csv(const std::string& path, const SimLog& log) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw Error("cannot open '" + path + "' for writing");
  write_history_csv(os, log);
  if (!os) throw Error("write failed for '" + path + "'");
}

SimLog read_history_csv(std::istream& is) {
  SimLog log;
  std::string line;
  int lineno = 0;
  bool have_header = false;
  const auto& cols = history_columns();
  while (std::getline(is, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line.rfind("# ", 0) == 0) {
      const auto colon = line.find(": ");
      if (colon == std::string::npos) continue;
      const std::string key = line.substr(2, colon - 2);
      const std::string value = line.substr(colon + 2);
      if (key == "name") log.name = value;
      else if (key == "run") log.run = static_cast<int>(parse_double(value, lineno));
      else if (key == "seed") log.seed = std::stoull(value);
      continue;
    }
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string f;
    while (std::getline(ss, f, ',')) fields.push_back(f);
    if (!have_header) {
      if (fields != cols) {
        std::ostringstream os;
        os << "history csv line " << lineno << ": unexpected column header";
        throw DomainError(os.str());
      }
      have_header = true;
      continue;
    }
    if (fields.size() != cols.size()) {
      std::ostringstream os;
      os << "history csv line " << lineno << ": expected " << cols.size() << " fields, got "
         << fields.size();
      throw DomainError(os.str());
    }
    std::vector<double> v(fields.size());
    for (std::size_t i = 0; i < fields.size(); ++i) v[i] = parse_double(fields[i], lineno);
    SimRecord r;
    std::size_t k = 0;
    r.t = v[k++];
    for (int i = 0; i < 9; ++i) r.zeta(i) = v[k++];
    for (int i = 0; i < 3; ++i) r.omega_err(i) = v[k++];
    r.v_zeta = v[k++];
    r.v_omega = v[k++];
    for (int i = 0; i < 4; ++i) r.u(i) = v[k++];
    for (int i = 0; i < 3; ++i) r.d_accel(i) = v[k++];
    for (int i = 0; i < 3; ++i) r.d_alpha(i) = v[k++];
    for (int i = 0; i < 3; ++i) r.pos_err(i) = v[k++];
    for (int i = 0; i < 3; ++i) r.vel_err(i) = v[k++];
    log.summary.update(r);
    log.records.push_back(r);
  }
  if (!have_header) throw DomainError("history csv: missing column header");
  return log;
}

SimLog read_history_csv(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw Error("cannot open '" + path + "'");
  return read_history_csv(is);
}

ContainmentCheck verify_containment(const synthesis::CertBundle& cert, const SimLog& log,
                                    double tol) {
  ContainmentCheck c;
  const Matrix& Pz = cert.zeta_set.ellipsoid.P;
  const Matrix& Pw = cert.omega_set.ellipsoid.P;
  for (const SimRecord& r : log.records) {
    c.max_v_zeta = std::max(c.max_v_zeta, r.zeta.dot(Pz * r.zeta));
    c.max_v_omega = std::max(c.max_v_omega, r.omega_err.dot(Pw * r.omega_err));
  }
  c.contained = !log.diverged && c.max_v_zeta <= 1.0 + tol && c.max_v_omega <= 1.0 + tol;
  return c;
}

}  // namespace loglin::sim
