#include <loglin/sim/closed_loop.hpp>

#include <Eigen/LU>
#include <cmath>

#include <loglin/dynamics.hpp>
#include <loglin/sim/integrator.hpp>

namespace loglin::sim {

Inversion parse_inversion(const std::string& name) {
  if (name == "actuated") return Inversion::Actuated;
  if (name == "lifted") return Inversion::Lifted;
  throw DomainError("unknown inversion mode '" + name + "' (actuated, lifted)");
}

std::string to_string(Inversion mode) {
  return mode == Inversion::Lifted ? "lifted" : "actuated";
}

void SimOptions::validate() const {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw DomainError("simulation: dt must be positive");
  if (!(duration > 0.0) || !std::isfinite(duration))
    throw DomainError("simulation: duration must be positive");
  if (!initial_zeta.allFinite()) throw DomainError("simulation: initial offset must be finite");
  if (record_stride < 0) throw DomainError("simulation: record stride must be non-negative");
}

namespace {

struct BodyState {
  Mat5 X = Mat5::Identity();
  Vec3 w = Vec3::Zero();

  BodyState operator+(const BodyState& o) const { return {X + o.X, w + o.w}; }
  friend BodyState operator*(double s, const BodyState& b) { return {s * b.X, s * b.w}; }
};

class Loop {
 public:
  Loop(const synthesis::CertBundle& cert, const trajectory::Reference& reference,
       const Disturbance& disturbance, Inversion mode)
      : cert_(cert), ref_(reference), dist_(disturbance), mode_(mode),
        Jinv_(cert.vehicle.inertia.inverse()) {}

  // Lifted 9-vector input correction for a given error.
  Vec9 correction(const Vec9& zeta, const Mat9& U) const {
    const Vec4 v = cert_.K_zeta * zeta;
    if (mode_ == Inversion::Lifted) return U.partialPivLu().solve(dynamics::input_matrix() * v);
    const Eigen::Matrix4d S = U.bottomRightCorner<4, 4>();
    return dynamics::input_matrix() * S.partialPivLu().solve(v);
  }

  Vec9 correction(const Vec9& zeta) const { return correction(zeta, se23::u_zeta(zeta)); }

  // Body rate commanded by the outer loop at time t for error zeta.
  Vec3 rate_command(const trajectory::ReferenceSample& r, const Vec9& zeta) const {
    return r.omega() + se23::slot_R(correction(zeta));
  }

  BodyState rhs(double t, const BodyState& s, SimRecord* rec) const {
    const trajectory::ReferenceSample r = ref_.sample(t);
    const se23::GroupState Xb = se23::GroupState::from_matrix_unchecked(s.X);
    const se23::GroupState eta = Xb.inverse() * r.X;
    const Vec9 zeta = se23::log_group(eta);
    const Mat9 U = se23::u_zeta(zeta);
    const Vec9 y = correction(zeta, U);

    const Vec3 d_a = dist_.accel(t);
    const Vec3 d_alpha = dist_.alpha(t);
    se23::InputVector nu_b;
    nu_b << se23::slot_p(y), r.accel() + se23::slot_v(y) + d_a, s.w;

    const Mat9 A = -se23::ad_matrix(r.nubar) + se23::c_triangle();
    const Vec9 zeta_dot = A * zeta + U * (nu_b - r.nubar);

    // Time derivative of the rate command along the error flow.
    const double h = 1e-5;
    const Vec9 y_dot =
        (correction(zeta + h * zeta_dot) - correction(zeta - h * zeta_dot)) / (2.0 * h);
    const Vec3 omega_c = r.omega() + se23::slot_R(y);
    const Vec3 omega_c_dot = r.omega_dot + se23::slot_R(y_dot);

    // Inner loop in the reference frame; R_br maps reference to body axes.
    const Mat3& R_br = eta.R;
    const Vec3 e_b = omega_c - s.w;
    const Vec3 e_r = R_br.transpose() * e_b;
    const Vec3 feedforward = R_br.transpose() * (omega_c_dot + s.w.cross(e_b));
    const Vec3 alpha_cmd =
        synthesis::angular_rate_command(feedforward, e_r, R_br, cert_.K_omega);
    const Vec3 M = synthesis::moment(cert_.vehicle, alpha_cmd, s.w);
    const Vec3 M_dist = cert_.vehicle.inertia * (-(R_br * d_alpha));
    const Mat3& J = cert_.vehicle.inertia;

    BodyState out;
    out.X = group_rhs(s.X, nu_b, cert_.vehicle.gravity);
    out.w = Jinv_ * (M + M_dist - s.w.cross(J * s.w));

    if (rec != nullptr) {
      rec->t = t;
      rec->zeta = zeta;
      rec->omega_err = e_r;
      rec->v_zeta = zeta.dot(cert_.zeta_set.ellipsoid.P * zeta);
      rec->v_omega = e_r.dot(cert_.omega_set.ellipsoid.P * e_r);
      rec->u << y(se23::kV + 2), se23::slot_R(y);
      rec->d_accel = d_a;
      rec->d_alpha = d_alpha;
      rec->pos_err = eta.p;
      rec->vel_err = eta.v;
    }
    return out;
  }

 private:
  const synthesis::CertBundle& cert_;
  const trajectory::Reference& ref_;
  const Disturbance& dist_;
  Inversion mode_;
  Mat3 Jinv_;
};

}  // namespace

SimLog run_closed_loop(const synthesis::CertBundle& cert, const trajectory::Reference& reference,
                       const Disturbance& disturbance, const SimOptions& options) {
  options.validate();
  const Loop loop(cert, reference, disturbance, options.inversion);

  SimLog log;
  log.name = cert.name;
  const auto steps = static_cast<long>(std::llround(options.duration / options.dt));
  if (options.record_stride > 0)
    log.records.reserve(static_cast<std::size_t>(steps / options.record_stride + 2));

  const trajectory::ReferenceSample r0 = reference.sample(0.0);
  BodyState s;
  s.X = (r0.X * se23::exp_group(options.initial_zeta).inverse()).matrix();
  s.w = Vec3::Zero();
  try {
    s.w = loop.rate_command(r0, options.initial_zeta);
  } catch (const DomainError& e) {
    log.diverged = true;
    log.failure = e.what();
    return log;
  }

  auto rhs = [&](double t, const BodyState& b) { return loop.rhs(t, b, nullptr); };
  for (long k = 0; k <= steps; ++k) {
    const double t = static_cast<double>(k) * options.dt;
    try {
      SimRecord rec;
      const BodyState k1 = loop.rhs(t, s, &rec);
      log.summary.update(rec);
      if (options.record_stride > 0 && (k % options.record_stride == 0 || k == steps))
        log.records.push_back(rec);
      if (k == steps) break;

      const double dt = options.dt;
      const BodyState k2 = rhs(t + 0.5 * dt, s + (0.5 * dt) * k1);
      const BodyState k3 = rhs(t + 0.5 * dt, s + (0.5 * dt) * k2);
      const BodyState k4 = rhs(t + dt, s + dt * k3);
      BodyState next = s + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
      next.X = se23::project_to_group(next.X).matrix();
      s = next;
    } catch (const DomainError& e) {
      log.diverged = true;
      log.failure = e.what();
      break;
    }
  }
  return log;
}

}  // namespace loglin::sim
