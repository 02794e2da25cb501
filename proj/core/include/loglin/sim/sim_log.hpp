#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include <loglin/cascade.hpp>

namespace loglin::sim {

/// One logged sample of a closed-loop run.
struct SimRecord {
  double t = 0.0;
  Vec9 zeta = Vec9::Zero();
  Vec3 omega_err = Vec3::Zero();  // reference frame
  double v_zeta = 0.0;            // ζᵀ P_ζ ζ
  double v_omega = 0.0;           // eᵀ P_ω e
  Vec4 u = Vec4::Zero();          // thrust-axis acceleration, rate corrections
  Vec3 d_accel = Vec3::Zero();
  Vec3 d_alpha = Vec3::Zero();
  Vec3 pos_err = Vec3::Zero();  // p-part of X_b⁻¹ Xbar
  Vec3 vel_err = Vec3::Zero();
};

/// Running maxima, tracked on every step even when records are thinned.
struct SimSummary {
  double max_v_zeta = 0.0;
  double max_v_omega = 0.0;
  Vec9 max_abs_zeta = Vec9::Zero();
  Vec3 max_abs_omega_err = Vec3::Zero();
  Vec3 max_abs_pos_err = Vec3::Zero();
  Vec3 max_abs_vel_err = Vec3::Zero();
  double max_angle_err = 0.0;

  void update(const SimRecord& r);
};

struct SimLog {
  std::string name;
  int run = 0;
  std::uint64_t seed = 0;
  bool diverged = false;
  std::string failure;
  std::vector<SimRecord> records;
  SimSummary summary;
};

/// Column names of the history CSV, in order.
const std::vector<std::string>& history_columns();

/// Writes `# key: value` header lines (name, run, seed) then the column row
/// and one line per record. Doubles use shortest round-trip formatting, so
/// equal logs produce byte-identical files.
void write_history_csv(std::ostream& os, const SimLog& log);
void write_history_csv(const std::string& path, const SimLog& log);

/// Parses a file written by write_history_csv. Throws DomainError on
/// malformed input (with the line number).
SimLog read_history_csv(std::istream& is);
SimLog read_history_csv(const std::string& path);

struct ContainmentCheck {
  double max_v_zeta = 0.0;
  double max_v_omega = 0.0;
  bool contained = false;
};

/// Re-evaluates both Lyapunov functions on the logged errors using the
/// bundle's sets; contained when neither exceeds 1 + tol.
ContainmentCheck verify_containment(const synthesis::CertBundle& cert, const SimLog& log,
                                    double tol = 1e-6);

/// Shortest round-trip decimal form of x.
std::string format_double(double x);

}  // namespace loglin::sim
