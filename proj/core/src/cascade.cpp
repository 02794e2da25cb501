#include <loglin/cascade.hpp>

#include <Eigen/Eigenvalues>
#include <numbers>
#include <sstream>

#include <loglin/dynamics.hpp>
#include <loglin/riccati.hpp>

namespace loglin::synthesis {

namespace {

[[noreturn]] void stage_failure(const std::string& stage, const std::exception& e) {
  throw InfeasibleError(stage + ": " + e.what());
}

// Worst-case perturbation rows of U(z) B_d d + (U(z) B_u u(z) - B_u K z) over
// the samples, plus the largest |U(z) - U(0)| (induced infinity norm).
std::pair<Vec9, double> sampled_row_bounds(const std::vector<Vec9>& samples,
                                           const Vec9& nominal, const Mat4x9& K_zeta) {
  const Mat9x4 B_u = dynamics::input_matrix();
  const Mat9x6 B_d = dynamics::disturbance_matrix();
  Vec6 d_nominal;
  d_nominal << nominal.segment<3>(se23::kV), nominal.segment<3>(se23::kR);
  Vec9 rows = nominal;
  double rho = 0.0;
  for (const auto& z : samples) {
    const Mat9 U = se23::u_zeta(z);
    rho = std::max(rho, (U + Mat9::Identity()).cwiseAbs().rowwise().sum().maxCoeff());
    const Vec4 u = dynamic_inversion_zeta(z, K_zeta);
    const Vec9 residual = U * (B_u * u) - B_u * (K_zeta * z);
    const Vec9 spread = (U * B_d).cwiseAbs() * d_nominal + residual.cwiseAbs();
    rows = rows.cwiseMax(spread);
  }
  return {rows, rho};
}

std::vector<Vec9> refinement_samples(const Ellipsoid& E, double inflation, int count) {
  const Matrix S = E.shape();
  Eigen::SelfAdjointEigenSolver<Matrix> es(S);
  const Matrix root = es.eigenvectors() *
                      es.eigenvalues().cwiseMax(0.0).cwiseSqrt().asDiagonal() *
                      es.eigenvectors().transpose();
  std::vector<Vec9> out{Vec9::Zero()};
  const auto sphere = sphere_points(9, count);
  for (double shell : {0.5, 1.0}) {
    const double scale = shell * inflation;
    for (int i = 0; i < 9; ++i) {
      const Vec9 x = scale * S.col(i) / std::sqrt(S(i, i));
      out.push_back(x);
      out.push_back(-x);
    }
    for (const auto& u : sphere) out.push_back(scale * (root * u));
  }
  return out;
}

}  // namespace

Vec9 nominal_zeta_row_bounds(const DisturbanceBounds& bounds, double omega_radius) {
  Vec9 rows = Vec9::Zero();
  rows.segment<3>(se23::kV) = bounds.accel;
  rows.segment<3>(se23::kR) = Vec3::Constant(omega_radius) + bounds.omega_direct;
  return rows;
}

CertBundle certify_cascade(const VehicleParams& vehicle, const Envelope& envelope,
                           const DisturbanceBounds& bounds, const LqrWeights& weights,
                           const CertifyOptions& options, std::string name) {
  vehicle.validate();
  if ((bounds.alpha.array() < 0).any() || (bounds.accel.array() < 0).any() ||
      (bounds.omega_direct.array() < 0).any())
    throw DomainError("certify: disturbance bounds must be non-negative");

  CertBundle out;
  out.name = std::move(name);
  out.vehicle = vehicle;
  out.envelope = envelope;
  out.bounds = bounds;
  out.weights = weights;
  out.options = options;

  // Rate-error subsystem: e' = -omegabar x e + v + d_alpha, v = K_omega e.
  try {
    const Matrix A = -se23::skew(envelope.omega);
    const Matrix B = Matrix::Identity(3, 3);
    const Matrix K = lqr_gain(A, B, weights.q_omega.asDiagonal().toDenseMatrix(),
                              weights.r_omega.asDiagonal().toDenseMatrix());
    out.K_omega = -K;
    out.omega_set = invariant_ellipsoid(A + out.K_omega, B, bounds.alpha, options.objective);
  } catch (const Error& e) {
    stage_failure("omega subsystem", e);
  }
  for (int i = 0; i < 3; ++i) out.omega_bound(i) = ellipsoid_axis_bound(out.omega_set.ellipsoid, i);
  out.omega_radius = ellipsoid_radius(out.omega_set.ellipsoid);

  // Zeta system.
  const dynamics::ZetaSystem sys = dynamics::zeta_system(out.nubar());
  Matrix A_cl;
  try {
    const Matrix K = lqr_gain(sys.A, sys.B_u, weights.q_zeta.asDiagonal().toDenseMatrix(),
                              weights.r_zeta.asDiagonal().toDenseMatrix());
    out.K_zeta = -K;
    A_cl = sys.A + sys.B_u * out.K_zeta;
  } catch (const Error& e) {
    stage_failure("zeta LQR", e);
  }

  const Vec9 nominal = nominal_zeta_row_bounds(bounds, out.omega_radius);
  try {
    Vec6 d;
    d << nominal.segment<3>(se23::kV), nominal.segment<3>(se23::kR);
    out.zeta_set = invariant_ellipsoid(A_cl, sys.B_d, d, options.objective);
  } catch (const Error& e) {
    stage_failure("zeta invariant set", e);
  }
  out.refinement.row_bounds = nominal;

  if (options.refine) {
    out.refinement.enabled = true;
    const Matrix I9 = Matrix::Identity(9, 9);
    InvariantSet current = out.zeta_set;
    for (int iter = 1; iter <= options.max_iterations; ++iter) {
      out.refinement.iterations = iter;
      std::vector<Vec9> samples;
      try {
        if (max_rotation_extent(current.ellipsoid) * options.inflation >=
            std::numbers::pi - se23::kChartMargin)
          throw DomainError("candidate set leaves the log chart");
        samples = refinement_samples(current.ellipsoid, options.inflation, options.refine_samples);
      } catch (const Error& e) {
        stage_failure("zeta refinement", e);
      }
      const auto [rows, rho] = sampled_row_bounds(samples, nominal, out.K_zeta);
      out.refinement.rho = rho;
      out.refinement.row_bounds = rows;
      if (rho > options.rho_limit) {
        std::ostringstream os;
        os << "zeta refinement: distortion rho = " << rho << " exceeds " << options.rho_limit;
        throw InfeasibleError(os.str());
      }
      InvariantSet next;
      try {
        next = invariant_ellipsoid(A_cl, I9, rows, options.objective);
      } catch (const Error& e) {
        stage_failure("zeta refinement", e);
      }
      Ellipsoid inflated = current.ellipsoid;
      inflated.P /= options.inflation * options.inflation;
      current = next;
      if (ellipsoid_contains(inflated, next.ellipsoid)) {
        out.refinement.converged = true;
        break;
      }
    }
    if (!out.refinement.converged)
      throw InfeasibleError("zeta refinement: no fixed point within the iteration limit");
    out.zeta_set = current;
  }

  try {
    out.group = ellipsoid_to_group(out.zeta_set.ellipsoid, options.group_samples).summary;
  } catch (const Error& e) {
    stage_failure("group mapping", e);
  }
  return out;
}

}  // namespace loglin::synthesis
