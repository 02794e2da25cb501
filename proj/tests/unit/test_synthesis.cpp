#include <doctest.h>

#include <cmath>

#include <loglin/cascade.hpp>
#include <loglin/dynamics.hpp>
#include <loglin/lyapunov.hpp>
#include <loglin/riccati.hpp>
#include <loglin/sim/integrator.hpp>

#include "test_support.hpp"

using namespace loglin;
using namespace loglin::synthesis;
using test_support::max_abs;

namespace {

Matrix random_stable(std::mt19937_64& rng, int n) {
  std::normal_distribution<double> g;
  Matrix A(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) A(i, j) = g(rng);
  const double shift = spectral_abscissa(A) + 0.5;
  return A - shift * Matrix::Identity(n, n);
}

// Kronecker oracle: (I ⊗ A + A ⊗ I) vec X = -vec Q.
Matrix lyapunov_kron(const Matrix& A, const Matrix& Q) {
  const auto n = A.rows();
  const Matrix I = Matrix::Identity(n, n);
  Matrix L = Matrix::Zero(n * n, n * n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) {
      L.block(i * n, j * n, n, n) += A(i, j) * I;
      L.block(i * n, j * n, n, n) += (i == j ? 1.0 : 0.0) * A;
    }
  const Vector q = Eigen::Map<const Vector>(Q.data(), n * n);
  const Vector x = L.fullPivLu().solve(-q);
  return Eigen::Map<const Matrix>(x.data(), n, n);
}

CertBundle scenario_bundle(double accel_bound) {
  Envelope env;
  env.accel = Vec3(7.5, 7.5, 0);
  env.omega = Vec3(5, 5, 1);
  DisturbanceBounds b;
  b.alpha = Vec3::Constant(0.1);
  b.accel = Vec3::Constant(accel_bound);
  return certify_cascade({}, env, b, {}, {}, "scenario");
}

}  // namespace

TEST_CASE("Lyapunov solver matches the Kronecker oracle") {
  std::mt19937_64 rng(31);
  for (int n : {1, 2, 3, 5, 9}) {
    const Matrix A = random_stable(rng, n);
    Matrix Q = Matrix::Random(n, n);
    Q = Q * Q.transpose();
    const Matrix X = solve_lyapunov(A, Q);
    CHECK(max_abs(X - lyapunov_kron(A, Q)) < 1e-10 * std::max(1.0, max_abs(X)));
    CHECK(lyapunov_residual(A, X, Q) < 1e-10);
    CHECK(max_abs(X - X.transpose()) == 0.0);
  }
  // Non-symmetric right-hand side.
  const Matrix A = random_stable(rng, 4);
  const Matrix Q = Matrix::Random(4, 4);
  CHECK(max_abs(solve_lyapunov(A, Q) - lyapunov_kron(A, Q)) < 1e-10);
}

TEST_CASE("Lyapunov solver rejects singular operators") {
  Matrix A(2, 2);
  A << 1, 0, 0, -1;
  CHECK_THROWS_AS(solve_lyapunov(A, Matrix::Identity(2, 2)), NumericalError);
}

TEST_CASE("CARE on the double integrator") {
  Matrix A(2, 2), B(2, 1);
  A << 0, 1, 0, 0;
  B << 0, 1;
  const Matrix Q = Matrix::Identity(2, 2);
  const Matrix R = Matrix::Identity(1, 1);
  const Matrix P = solve_care(A, B, Q, R);
  const double s3 = std::sqrt(3.0);
  Matrix P_exact(2, 2);
  P_exact << s3, 1, 1, s3;
  CHECK(max_abs(P - P_exact) < 1e-12);
  const Matrix K = lqr_gain(A, B, Q, R);
  CHECK(K(0, 0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(K(0, 1) == doctest::Approx(s3).epsilon(1e-12));
  CHECK(care_residual(A, B, Q, R, P) < 1e-12);
}

TEST_CASE("CARE on random systems") {
  std::mt19937_64 rng(32);
  for (int n : {3, 6, 9}) {
    const Matrix A = Matrix::Random(n, n) * 2.0;
    const Matrix B = Matrix::Random(n, 2);
    const Matrix Q = Matrix::Identity(n, n);
    const Matrix R = Matrix::Identity(2, 2);
    const Matrix P = solve_care(A, B, Q, R);
    CHECK(care_residual(A, B, Q, R, P) < 1e-8 * std::max(1.0, max_abs(P)));
    CHECK(spectral_abscissa(A - B * lqr_gain(A, B, Q, R)) < 0.0);
  }
}

TEST_CASE("CARE rejects unstabilizable pairs") {
  const Matrix A = Matrix::Identity(2, 2);
  const Matrix B = Matrix::Zero(2, 1);
  CHECK_THROWS_AS(solve_care(A, B, Matrix::Identity(2, 2), Matrix::Identity(1, 1)), InfeasibleError);
}

TEST_CASE("scalar invariant set is the reachable interval") {
  Matrix A(1, 1), B(1, 1);
  A << -1;
  B << 1;
  Vector d(1);
  d << 1;
  const InvariantSet s = invariant_ellipsoid(A, B, d);
  CHECK(s.ellipsoid.P(0, 0) == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(s.ellipsoid.alpha == doctest::Approx(1.0).epsilon(1e-3));
  CHECK(ellipsoid_axis_bound(s.ellipsoid, 0) == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(certificate_residual(s) <= 1e-8);
}

TEST_CASE("box-to-energy weight covers the box corners") {
  Vector d(3);
  d << 0.1, 2.0, 0.5;
  const Matrix W = box_to_energy_weight(d);
  CHECK(d.dot(W.inverse() * d) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("invariant sets hold against worst-case disturbances") {
  std::mt19937_64 rng(33);
  for (int trial = 0; trial < 5; ++trial) {
    const Matrix A = random_stable(rng, 3);
    const Matrix B = Matrix::Random(3, 2);
    Vector d(2);
    d << 0.5, 1.5;
    const InvariantSet s = invariant_ellipsoid(A, B, d, trial % 2 ? Objective::LogDet : Objective::Trace);
    CHECK(certificate_residual(s) <= 1e-8);
    const Matrix& P = s.ellipsoid.P;
    // Bang-bang disturbance maximizing dV/dt, starting on the boundary.
    Vec3 x = Vec3(1, 0, 0) / std::sqrt(P(0, 0));
    double worst = 0.0;
    auto f = [&](double, const Vec3& y) -> Vec3 {
      const Vector grad = B.transpose() * (P * y);
      Vector w(2);
      for (int i = 0; i < 2; ++i) w(i) = grad(i) >= 0 ? d(i) : -d(i);
      return A * y + B * w;
    };
    for (int k = 0; k < 20000; ++k) {
      x = sim::rk4_step<Vec3>(f, 0.0, x, 1e-3);
      worst = std::max(worst, x.dot(P * x));
    }
    CHECK(worst <= 1.0 + 1e-3);
  }
}

TEST_CASE("axis bounds match a sampling oracle") {
  std::mt19937_64 rng(34);
  const Matrix A = random_stable(rng, 4);
  Vector d(4);
  d << 1, 0.5, 0.2, 0.1;
  const InvariantSet s = invariant_ellipsoid(A, Matrix::Identity(4, 4), d);
  const Matrix S = s.ellipsoid.shape();
  Eigen::SelfAdjointEigenSolver<Matrix> es(S);
  const Matrix root = es.operatorSqrt();
  std::normal_distribution<double> g;
  Vector best = Vector::Zero(4);
  for (int k = 0; k < 200000; ++k) {
    Vector u(4);
    for (int i = 0; i < 4; ++i) u(i) = g(rng);
    const Vector x = root * u.normalized();
    best = best.cwiseMax(x.cwiseAbs());
  }
  for (int i = 0; i < 4; ++i) {
    const double bound = ellipsoid_axis_bound(s.ellipsoid, i);
    CHECK(best(i) <= bound * (1 + 1e-12));
    CHECK(best(i) >= 0.97 * bound);
  }
  CHECK(ellipsoid_radius(s.ellipsoid) == doctest::Approx(std::sqrt(es.eigenvalues().maxCoeff())));
}

TEST_CASE("ellipsoid containment") {
  Ellipsoid a, b;
  a.P = Matrix::Identity(2, 2);
  b.P = 4.0 * Matrix::Identity(2, 2);
  CHECK(ellipsoid_contains(a, b));
  CHECK_FALSE(ellipsoid_contains(b, a));
  b.P(0, 0) = 0.5;
  CHECK_FALSE(ellipsoid_contains(a, b));
}

TEST_CASE("invariant set preconditions") {
  Matrix A(1, 1), B(1, 1);
  A << 1;
  B << 1;
  Vector d(1);
  d << 1;
  CHECK_THROWS_AS(invariant_ellipsoid(A, B, d), InfeasibleError);
  A << -1;
  d << 0;
  CHECK_THROWS_AS(invariant_ellipsoid(A, B, d), InfeasibleError);
  // Zero channels are dropped.
  Matrix B2(1, 2);
  B2 << 1, 1;
  Vector d2(2);
  d2 << 1, 0;
  const auto s = invariant_ellipsoid(A, B2, d2);
  CHECK(s.B.cols() == 1);
  CHECK(s.ellipsoid.P(0, 0) == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("cascade on the reference flight envelope") {
  const CertBundle small = scenario_bundle(0.1);
  const CertBundle large = scenario_bundle(1.0);
  // Q = R = I on e' = -wbar x e + v gives v = -e and an isotropic set.
  CHECK(max_abs(small.K_omega + Mat3::Identity()) < 1e-10);
  for (int i = 0; i < 3; ++i)
    CHECK(small.omega_bound(i) == doctest::Approx(std::sqrt(0.03)).epsilon(1e-5));
  CHECK(small.omega_radius == doctest::Approx(std::sqrt(0.03)).epsilon(1e-5));
  for (const CertBundle* b : {&small, &large}) {
    CHECK(certificate_residual(b->omega_set) <= 1e-8);
    CHECK(certificate_residual(b->zeta_set) <= 1e-8);
    CHECK(spectral_abscissa(b->zeta_set.A_cl) < 0.0);
    CHECK(b->group.max_rotation_angle < 3.14159);
  }
  CHECK(ellipsoid_contains(large.zeta_set.ellipsoid, small.zeta_set.ellipsoid));
  const Vec9 rows = nominal_zeta_row_bounds(small.bounds, small.omega_radius);
  CHECK(rows.head<3>().isZero());
  CHECK(rows.segment<3>(3) == Vec3::Constant(0.1));
  CHECK(rows.tail<3>() == Vec3::Constant(small.omega_radius));
}

TEST_CASE("cascade reports the failing stage") {
  Envelope env;  // hover-free zero input: lateral position is uncontrollable
  DisturbanceBounds b;
  b.alpha = Vec3::Constant(0.1);
  b.accel = Vec3::Constant(0.1);
  try {
    certify_cascade({}, env, b, {});
    FAIL("expected InfeasibleError");
  } catch (const InfeasibleError& e) {
    CHECK(std::string(e.what()).find("zeta LQR") != std::string::npos);
  }
  b.alpha.setZero();
  env.accel = Vec3(7.5, 7.5, 0);
  env.omega = Vec3(5, 5, 1);
  CHECK_THROWS_WITH_AS(certify_cascade({}, env, b, {}), doctest::Contains("omega subsystem"),
                       InfeasibleError);
}

TEST_CASE("refinement accounts for the distortion") {
  Envelope env;
  env.accel = Vec3(7.5, 7.5, 0);
  env.omega = Vec3(5, 5, 1);
  DisturbanceBounds b;
  b.alpha = Vec3::Constant(0.001);
  b.accel = Vec3::Constant(0.001);
  CertifyOptions opt;
  opt.refine = true;
  opt.refine_samples = 300;
  const CertBundle r = certify_cascade({}, env, b, {}, opt);
  CHECK(r.refinement.enabled);
  CHECK(r.refinement.converged);
  CHECK(r.refinement.rho <= opt.rho_limit);
  CHECK((r.refinement.row_bounds.array() >= nominal_zeta_row_bounds(b, r.omega_radius).array()).all());
  CHECK(certificate_residual(r.zeta_set) <= 1e-8);

  // The large-disturbance set is too big for the distortion bound.
  b.alpha = Vec3::Constant(0.1);
  b.accel = Vec3::Constant(1.0);
  CHECK_THROWS_WITH_AS(certify_cascade({}, env, b, {}, opt), doctest::Contains("refinement"),
                       InfeasibleError);
}
