#include <loglin/trajectory.hpp>

#include <Eigen/LU>
#include <algorithm>
#include <cmath>
#include <sstream>

namespace loglin::trajectory {

namespace {

using Coeffs = Eigen::Matrix<double, 8, 1>;

double falling_factorial(int i, int r) {
  double f = 1.0;
  for (int k = 0; k < r; ++k) f *= static_cast<double>(i - k);
  return f;
}

// d^r/dtau^r of (1, tau, ..., tau^7).
Coeffs basis_row(double tau, int r) {
  Coeffs row = Coeffs::Zero();
  for (int i = r; i < 8; ++i) row(i) = falling_factorial(i, r) * std::pow(tau, i - r);
  return row;
}

// Normalized unit-interval snap Hessian.
Eigen::Matrix<double, 8, 8> unit_snap_hessian() {
  Eigen::Matrix<double, 8, 8> H = Eigen::Matrix<double, 8, 8>::Zero();
  for (int i = 4; i < 8; ++i)
    for (int j = 4; j < 8; ++j)
      H(i, j) = falling_factorial(i, 4) * falling_factorial(j, 4) / static_cast<double>(i + j - 7);
  return H;
}

// Derivative-order sets for the boundary and continuity constraints.
constexpr int kEndpointOrders = 4;    // position, velocity, acceleration, jerk
constexpr int kContinuityOrders = 4;  // velocity through snap

}  // namespace

Vec4 PolySegment::evaluate(double t, int order) const {
  const double tau = (t - start) / duration;
  const Coeffs row = basis_row(tau, order);
  const double scale = std::pow(duration, -order);
  Vec4 out;
  for (int a = 0; a < 4; ++a) out(a) = scale * row.dot(coeffs[static_cast<std::size_t>(a)]);
  return out;
}

Trajectory::Trajectory(std::vector<PolySegment> segments) : segments_(std::move(segments)) {
  if (segments_.empty()) throw DomainError("Trajectory: no segments");
}

double Trajectory::start_time() const { return segments_.front().start; }

double Trajectory::end_time() const {
  return segments_.back().start + segments_.back().duration;
}

Eigen::Matrix<double, 4, 5> Trajectory::derivatives(double t) const {
  Eigen::Matrix<double, 4, 5> out = Eigen::Matrix<double, 4, 5>::Zero();
  if (t <= start_time()) {
    out.col(0) = segments_.front().evaluate(start_time(), 0);
    return out;
  }
  if (t >= end_time()) {
    out.col(0) = segments_.back().evaluate(end_time(), 0);
    return out;
  }
  auto it = std::upper_bound(segments_.begin(), segments_.end(), t,
                             [](double value, const PolySegment& s) { return value < s.start; });
  const PolySegment& seg = *std::prev(it);
  for (int k = 0; k <= 4; ++k) out.col(k) = seg.evaluate(t, k);
  return out;
}

double Trajectory::snap_cost() const {
  const auto H = unit_snap_hessian();
  double cost = 0.0;
  for (const auto& s : segments_)
    for (int a = 0; a < 3; ++a)
      cost += std::pow(s.duration, -7) * s.coeffs[static_cast<std::size_t>(a)].dot(
                                             H * s.coeffs[static_cast<std::size_t>(a)]);
  return cost;
}

namespace detail {

Matrix min_snap_constraint_matrix(const std::vector<double>& durations) {
  const auto m = static_cast<Eigen::Index>(durations.size());
  const Eigen::Index rows = 2 * kEndpointOrders + (m - 1) * (2 + kContinuityOrders);
  Matrix A = Matrix::Zero(rows, 8 * m);
  Eigen::Index r = 0;
  for (int k = 0; k < kEndpointOrders; ++k) A.block(r++, 0, 1, 8) = basis_row(0.0, k).transpose();
  for (Eigen::Index s = 0; s + 1 < m; ++s) {
    A.block(r++, 8 * s, 1, 8) = basis_row(1.0, 0).transpose();
    A.block(r++, 8 * (s + 1), 1, 8) = basis_row(0.0, 0).transpose();
    for (int k = 1; k <= kContinuityOrders; ++k) {
      A.block(r, 8 * s, 1, 8) =
          std::pow(durations[static_cast<std::size_t>(s)], -k) * basis_row(1.0, k).transpose();
      A.block(r, 8 * (s + 1), 1, 8) =
          -std::pow(durations[static_cast<std::size_t>(s + 1)], -k) * basis_row(0.0, k).transpose();
      ++r;
    }
  }
  for (int k = 0; k < kEndpointOrders; ++k)
    A.block(r++, 8 * (m - 1), 1, 8) = basis_row(1.0, k).transpose();
  return A;
}

Matrix min_snap_cost_matrix(const std::vector<double>& durations) {
  const auto m = static_cast<Eigen::Index>(durations.size());
  const auto H = unit_snap_hessian();
  Matrix out = Matrix::Zero(8 * m, 8 * m);
  for (Eigen::Index s = 0; s < m; ++s)
    out.block(8 * s, 8 * s, 8, 8) = std::pow(durations[static_cast<std::size_t>(s)], -7) * H;
  return out;
}

}  // namespace detail

Trajectory min_snap(const std::vector<Vec3>& waypoints, const std::vector<double>& times,
                    const std::vector<double>& yaw) {
  if (waypoints.size() < 2) throw DomainError("min_snap: need at least two waypoints");
  if (times.size() != waypoints.size())
    throw DomainError("min_snap: waypoints and times differ in length");
  if (!yaw.empty() && yaw.size() != waypoints.size())
    throw DomainError("min_snap: yaw and waypoints differ in length");
  std::vector<double> durations;
  for (std::size_t i = 1; i < times.size(); ++i) {
    const double T = times[i] - times[i - 1];
    if (!(T > 0.0) || !std::isfinite(T)) {
      std::ostringstream os;
      os << "min_snap: times must be strictly increasing (segment " << i - 1 << " has duration "
         << T << ")";
      throw DomainError(os.str());
    }
    durations.push_back(T);
  }

  const auto m = static_cast<Eigen::Index>(durations.size());
  const Matrix A = detail::min_snap_constraint_matrix(durations);
  const Matrix H = detail::min_snap_cost_matrix(durations);
  const Eigen::Index n = H.rows();
  const Eigen::Index c = A.rows();
  Matrix kkt = Matrix::Zero(n + c, n + c);
  kkt.topLeftCorner(n, n) = 2.0 * H;
  kkt.topRightCorner(n, c) = A.transpose();
  kkt.bottomLeftCorner(c, n) = A;
  Eigen::FullPivLU<Matrix> lu(kkt);
  if (!lu.isInvertible()) throw DomainError("min_snap: singular constraint system");

  std::vector<PolySegment> segments(static_cast<std::size_t>(m));
  for (Eigen::Index s = 0; s < m; ++s) {
    segments[static_cast<std::size_t>(s)].start = times[static_cast<std::size_t>(s)];
    segments[static_cast<std::size_t>(s)].duration = durations[static_cast<std::size_t>(s)];
  }
  for (int axis = 0; axis < 4; ++axis) {
    auto value = [&](std::size_t i) {
      if (axis < 3) return waypoints[i](axis);
      return yaw.empty() ? 0.0 : yaw[i];
    };
    Vector rhs = Vector::Zero(n + c);
    Eigen::Index r = n;
    rhs(r) = value(0);
    r += kEndpointOrders;
    for (Eigen::Index s = 0; s + 1 < m; ++s) {
      rhs(r++) = value(static_cast<std::size_t>(s + 1));
      rhs(r++) = value(static_cast<std::size_t>(s + 1));
      r += kContinuityOrders;
    }
    rhs(r) = value(waypoints.size() - 1);
    const Vector sol = lu.solve(rhs);
    for (Eigen::Index s = 0; s < m; ++s)
      segments[static_cast<std::size_t>(s)].coeffs[static_cast<std::size_t>(axis)] =
          sol.segment<8>(8 * s);
  }
  return Trajectory(std::move(segments));
}

}  // namespace loglin::trajectory

namespace loglin::trajectory {

namespace {

// Value with first and second time derivatives.
struct Jet {
  Vec3 v = Vec3::Zero();
  Vec3 d = Vec3::Zero();
  Vec3 dd = Vec3::Zero();
};

Jet normalize(const Jet& a) {
  const double s = a.v.norm();
  const Vec3 n = a.v / s;
  const double sd = n.dot(a.d);
  const double sdd = (a.d.squaredNorm() + a.v.dot(a.dd)) / s - sd * sd / s;
  Jet out;
  out.v = n;
  out.d = (a.d - n * sd) / s;
  out.dd = (a.dd - 2.0 * out.d * sd - n * sdd) / s;
  return out;
}

Jet cross(const Jet& a, const Jet& b) {
  Jet out;
  out.v = a.v.cross(b.v);
  out.d = a.d.cross(b.v) + a.v.cross(b.d);
  out.dd = a.dd.cross(b.v) + 2.0 * a.d.cross(b.d) + a.v.cross(b.dd);
  return out;
}

}  // namespace

ReferenceSample flatness_reference(const Trajectory& traj, double t, double mass,
                                   const Vec3& gravity) {
  const Eigen::Matrix<double, 4, 5> f = traj.derivatives(t);
  Jet thrust_dir;
  thrust_dir.v = f.block<3, 1>(0, 2) - gravity;
  thrust_dir.d = f.block<3, 1>(0, 3);
  thrust_dir.dd = f.block<3, 1>(0, 4);
  const double specific = thrust_dir.v.norm();
  if (!(specific > 1e-6))
    throw DomainError("flatness_reference: commanded acceleration equals gravity (free fall)");

  const double psi = f(3, 0);
  const double psid = f(3, 1);
  const double psidd = f(3, 2);
  const Vec3 heading(std::cos(psi), std::sin(psi), 0.0);
  const Vec3 heading_perp(-std::sin(psi), std::cos(psi), 0.0);
  Jet xc;
  xc.v = heading;
  xc.d = psid * heading_perp;
  xc.dd = psidd * heading_perp - psid * psid * heading;

  const Jet z = normalize(thrust_dir);
  const Jet y = normalize(cross(z, xc));
  const Jet x = cross(y, z);

  Mat3 R, Rd, Rdd;
  R << x.v, y.v, z.v;
  Rd << x.d, y.d, z.d;
  Rdd << x.dd, y.dd, z.dd;

  const Mat3 W = R.transpose() * Rd;
  const Mat3 Wd = R.transpose() * Rdd;

  ReferenceSample s;
  s.t = t;
  s.flat = f;
  s.X.R = R;
  s.X.v = f.block<3, 1>(0, 1);
  s.X.p = f.block<3, 1>(0, 0);
  s.nubar = se23::make_input(R.transpose() * thrust_dir.v,
                             se23::unskew(0.5 * (W - W.transpose())));
  s.omega_dot = se23::unskew(0.5 * (Wd - Wd.transpose()));
  s.thrust = mass * specific;
  return s;
}

EnvelopeSample reference_envelope(const Trajectory& traj, double mass, const Vec3& gravity) {
  EnvelopeSample env;
  const double t0 = traj.start_time();
  const double t1 = traj.end_time();
  const auto n = static_cast<long>(std::ceil((t1 - t0) * 1000.0));
  for (long k = 0; k <= n; ++k) {
    const double t = std::min(t1, t0 + static_cast<double>(k) * 1e-3);
    const ReferenceSample s = flatness_reference(traj, t, mass, gravity);
    env.accel = env.accel.cwiseMax(s.accel().cwiseAbs());
    env.omega = env.omega.cwiseMax(s.omega().cwiseAbs());
    env.omega_dot = env.omega_dot.cwiseMax(s.omega_dot.cwiseAbs());
  }
  env.accel *= 1.05;
  env.omega *= 1.05;
  env.omega_dot *= 1.05;
  return env;
}

}  // namespace loglin::trajectory
