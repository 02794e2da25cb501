#include <doctest.h>

#include <loglin/control.hpp>
#include <loglin/dynamics.hpp>
#include <loglin/sim/integrator.hpp>

#include "test_support.hpp"

using namespace loglin;
using namespace loglin::se23;
using test_support::max_abs;

namespace {

// Smooth input nu(t) = c + a sin(w t + phi) per component.
struct SmoothInput {
  Vec9 c, a, w, phi;

  static SmoothInput random(std::mt19937_64& rng, double scale) {
    SmoothInput s;
    s.c = test_support::random_vec<9>(rng, scale);
    s.a = test_support::random_vec<9>(rng, scale);
    s.w = test_support::random_vec<9>(rng, 3.0);
    s.phi = test_support::random_vec<9>(rng, 3.0);
    s.c.segment<3>(kP).setZero();
    s.a.segment<3>(kP).setZero();
    s.c.segment<3>(kR) *= 0.3;
    s.a.segment<3>(kR) *= 0.3;
    return s;
  }

  Vec9 operator()(double t) const {
    return c + a.cwiseProduct((w * t + phi).array().sin().matrix());
  }
};

}  // namespace

TEST_CASE("zeta system matrices") {
  const InputVector nubar = make_input(Vec3(7.5, 7.5, 0), Vec3(5, 5, 1));
  const auto sys = dynamics::zeta_system(nubar);
  CHECK(max_abs(sys.A - (-ad_matrix(nubar) + c_triangle())) == 0.0);
  CHECK(sys.A.block<3, 3>(kP, kV) == Mat3::Identity() - skew(Vec3::Zero()));
  CHECK(sys.B_u.topRows<5>().isZero());
  CHECK(sys.B_u.bottomRows<4>() == Eigen::Matrix4d::Identity());
  CHECK(sys.B_d.block<3, 3>(kV, 0) == Mat3::Identity());
  CHECK(sys.B_d.block<3, 3>(kR, 3) == Mat3::Identity());
}

TEST_CASE("error log follows the exact zeta ODE") {
  std::mt19937_64 rng(21);
  const Vec3 g(0, 0, -9.81);
  for (int trial = 0; trial < 3; ++trial) {
    const SmoothInput nu_b = SmoothInput::random(rng, 1.5);
    const SmoothInput nu_r = SmoothInput::random(rng, 1.5);
    const Vec9 zeta0 = test_support::random_algebra(rng, 0.5, 0.5);
    GroupState Xr = exp_group(test_support::random_algebra(rng, 1.0, 1.0));
    GroupState Xb = Xr * exp_group(zeta0).inverse();
    Vec9 zeta = zeta0;
    const double dt = 1e-3;
    double worst = 0.0;
    for (int k = 0; k < 1000; ++k) {
      const double t = k * dt;
      auto in_b = [&](double s, const Mat5&) { return nu_b(s); };
      auto in_r = [&](double s, const Mat5&) { return nu_r(s); };
      auto rhs = [&](double s, const Vec9& z) {
        return dynamics::zeta_rhs(z, nu_r(s), nu_b(s) - nu_r(s));
      };
      Xb = sim::step_group(Xb, t, dt, in_b, g);
      Xr = sim::step_group(Xr, t, dt, in_r, g);
      zeta = sim::rk4_step<Vec9>(rhs, t, zeta, dt);
      worst = std::max(worst, max_abs(log_group(dynamics::left_error(Xb, Xr)) - zeta));
    }
    CHECK(worst < 1e-8);
  }
}

TEST_CASE("zeta_rhs_exact splits the input difference") {
  std::mt19937_64 rng(22);
  const Vec9 z = test_support::random_algebra(rng, 0.5, 0.5);
  const InputVector nubar = make_input(Vec3(1, 2, 3), Vec3(0.1, 0.2, 0.3));
  const Vec4 u(0.3, -0.1, 0.2, 0.4);
  Vec6 d;
  d << 0.1, -0.2, 0.3, 0.01, 0.02, -0.03;
  Vec9 nu_tilde = Vec9::Zero();
  nu_tilde.segment<3>(kV) = Vec3(0.1, -0.2, 0.3 + 0.3);
  nu_tilde.segment<3>(kR) = Vec3(-0.1 + 0.01, 0.2 + 0.02, 0.4 - 0.03);
  CHECK(max_abs(dynamics::zeta_rhs_exact(z, nubar, u, d) - dynamics::zeta_rhs(z, nubar, nu_tilde)) <
        1e-15);
}

TEST_CASE("lifted inversion cancels the distortion exactly") {
  std::mt19937_64 rng(23);
  const Mat4x9 K = Eigen::Matrix<double, 4, 9>::Random();
  for (int i = 0; i < 50; ++i) {
    const Vec9 z = test_support::random_algebra(rng, 2.0, 2.5);
    const Vec9 y = synthesis::dynamic_inversion_lifted(z, K);
    CHECK(max_abs(u_zeta(z) * y - dynamics::input_matrix() * (K * z)) < 1e-12);
  }
}

TEST_CASE("actuated inversion is exact on actuated rows and second order elsewhere") {
  std::mt19937_64 rng(24);
  const Mat4x9 K = Eigen::Matrix<double, 4, 9>::Random();
  const Mat9x4 B = dynamics::input_matrix();
  for (int i = 0; i < 20; ++i) {
    const Vec9 z = test_support::random_algebra(rng, 1.0, 1.0);
    const Vec4 u = synthesis::dynamic_inversion_zeta(z, K);
    const Vec9 residual = u_zeta(z) * (B * u) - B * (K * z);
    CHECK(residual.bottomRows<4>().cwiseAbs().maxCoeff() < 1e-12);

    // Halving the error quarters the unactuated residual.
    const Vec9 zs = 0.01 * z;
    const Vec9 zh = 0.005 * z;
    const double rs =
        (u_zeta(zs) * (B * synthesis::dynamic_inversion_zeta(zs, K)) - B * (K * zs)).norm();
    const double rh =
        (u_zeta(zh) * (B * synthesis::dynamic_inversion_zeta(zh, K)) - B * (K * zh)).norm();
    if (rs > 1e-14) CHECK(rs / rh == doctest::Approx(4.0).epsilon(0.05));
  }
}

TEST_CASE("rate error dynamics") {
  const Vec3 wbar(5, 5, 1);
  const Vec3 e(0.1, -0.2, 0.05);
  const Mat3 K = -Mat3::Identity();
  const Vec3 d(0.01, 0.02, 0.03);
  CHECK(max_abs(dynamics::omega_error_rhs(e, wbar, K, d) - (-wbar.cross(e) - e + d)) < 1e-15);
  const Mat3 R = exp_so3(Vec3(0.1, 0.2, 0.3));
  CHECK(max_abs(dynamics::omega_error(wbar, R, Vec3(1, 2, 3)) - (wbar - R * Vec3(1, 2, 3))) < 1e-15);
  CHECK(max_abs(dynamics::zeta_rhs_closed_loop(Vec9::Ones(), Mat9::Identity(), dynamics::input_matrix(),
                                               Mat4x9::Zero(), Vec9::Ones()) -
                2.0 * Vec9::Ones()) == 0.0);
}

TEST_CASE("vehicle validation and moment") {
  synthesis::VehicleParams v;
  CHECK_NOTHROW(v.validate());
  const Vec3 w(1, 2, 3), a(0.1, 0.2, 0.3);
  CHECK(max_abs(synthesis::moment(v, a, w) - (v.inertia * a + w.cross(v.inertia * w))) < 1e-15);
  v.mass = 0.0;
  CHECK_THROWS_AS(v.validate(), DomainError);
  v.mass = 1.0;
  v.inertia(0, 1) = 0.5;
  CHECK_THROWS_AS(v.validate(), DomainError);
  v.inertia = -Mat3::Identity();
  CHECK_THROWS_AS(v.validate(), DomainError);
}
