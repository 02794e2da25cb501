#include <doctest.h>

#include <complex>
#include <unsupported/Eigen/MatrixFunctions>

#include <loglin/se23.hpp>

#include "test_support.hpp"

using namespace loglin;
using namespace loglin::se23;
using test_support::max_abs;

constexpr double kPi = 3.14159265358979323846;

namespace {

Mat5 expm(const Mat5& M) { return M.exp(); }
Mat9 expm(const Mat9& M) { return M.exp(); }

// f(z) = -z / (e^z - 1) at a purely imaginary argument.
std::complex<double> f_scalar(double theta) {
  const std::complex<double> z(0.0, theta);
  return -z / (std::exp(z) - 1.0);
}

}  // namespace

TEST_CASE("hat and vee are inverse") {
  std::mt19937_64 rng(1);
  for (int i = 0; i < 50; ++i) {
    const Vec9 x = test_support::random_vec<9>(rng, 3.0);
    CHECK(max_abs(vee(hat(x)) - x) == 0.0);
  }
  Mat5 M = hat(Vec9::Ones());
  M(4, 4) = 1.0;
  CHECK_THROWS_AS(vee(M), DomainError);
}

TEST_CASE("hat layout follows the (p, v, R) ordering") {
  Vec9 x;
  x << 1, 2, 3, 4, 5, 6, 7, 8, 9;
  const Mat5 M = hat(x);
  CHECK(M.block<3, 1>(0, 4) == Vec3(1, 2, 3));
  CHECK(M.block<3, 1>(0, 3) == Vec3(4, 5, 6));
  CHECK(M.topLeftCorner<3, 3>() == skew(Vec3(7, 8, 9)));
  CHECK(M.bottomRows<2>().isZero());
}

TEST_CASE("exp_group agrees with the matrix exponential") {
  std::mt19937_64 rng(2);
  for (int i = 0; i < 100; ++i) {
    const Vec9 x = test_support::random_algebra(rng, 4.0, 3.0);
    CHECK(max_abs(exp_group(x).matrix() - expm(hat(x))) < 1e-10);
  }
}

TEST_CASE("log inverts exp inside the principal chart") {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 100; ++i) {
    const Vec9 x = test_support::random_algebra(rng, 5.0, 3.1);
    CHECK(max_abs(log_group(exp_group(x)) - x) < 1e-9);
  }
  // Tiny and near-zero angles exercise the series branches.
  for (double angle : {0.0, 1e-9, 1e-5, 1e-3}) {
    Vec9 x = test_support::random_vec<9>(rng, 1.0);
    x.segment<3>(kR) = Vec3(1, -2, 2).normalized() * angle;
    CHECK(max_abs(log_group(exp_group(x)) - x) < 1e-12);
  }
}

TEST_CASE("log rejects rotations at the chart boundary") {
  GroupState X;
  X.R = exp_so3(Vec3(0, 0, 1) * (kPi - 1e-9));
  CHECK_THROWS_AS(log_group(X), DomainError);
  Vec9 z = Vec9::Zero();
  z(kR) = kPi;
  CHECK_THROWS_AS(u_zeta(z), DomainError);
}

TEST_CASE("group product and inverse") {
  std::mt19937_64 rng(4);
  for (int i = 0; i < 20; ++i) {
    const GroupState A = exp_group(test_support::random_algebra(rng, 2.0, 2.0));
    const GroupState B = exp_group(test_support::random_algebra(rng, 2.0, 2.0));
    CHECK(max_abs((A * B).matrix() - A.matrix() * B.matrix()) < 1e-13);
    CHECK(max_abs(A.inverse().matrix() - A.matrix().inverse()) < 1e-12);
    CHECK(A.is_valid());
  }
}

TEST_CASE("ad is the bracket") {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 100; ++i) {
    const Vec9 x = test_support::random_vec<9>(rng, 2.0);
    const Vec9 y = test_support::random_vec<9>(rng, 2.0);
    const Mat5 bracket = hat(x) * hat(y) - hat(y) * hat(x);
    CHECK(max_abs(hat(ad_matrix(x) * y) - bracket) < 1e-12);
  }
}

TEST_CASE("C-triangle identity") {
  std::mt19937_64 rng(6);
  const Mat5 C = c_matrix();
  CHECK(C(3, 4) == 1.0);
  CHECK(C.cwiseAbs().sum() == 1.0);
  for (int i = 0; i < 100; ++i) {
    const Vec9 x = test_support::random_vec<9>(rng, 3.0);
    CHECK(max_abs(hat(x) * C - C * hat(x) - hat(c_triangle() * x)) < 1e-14);
  }
  // Maps v into the p-slot with a positive sign.
  CHECK(c_triangle().block<3, 3>(kP, kV) == Mat3::Identity());
}

TEST_CASE("Ad of exp equals exp of ad") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 100; ++i) {
    const Vec9 x = test_support::random_algebra(rng, 2.0, 3.0);
    CHECK(max_abs(Ad_matrix(exp_group(x)) - expm(ad_matrix(x))) < 1e-9);
  }
}

TEST_CASE("Ad conjugates hat") {
  std::mt19937_64 rng(8);
  for (int i = 0; i < 20; ++i) {
    const GroupState X = exp_group(test_support::random_algebra(rng, 2.0, 2.5));
    const Vec9 y = test_support::random_vec<9>(rng, 2.0);
    CHECK(max_abs(hat(Ad_matrix(X) * y) - X.matrix() * hat(y) * X.inverse().matrix()) < 1e-12);
  }
}

TEST_CASE("U series coefficients") {
  CHECK(u_series_coefficient(0) == -1.0);
  CHECK(u_series_coefficient(1) == 0.5);
  CHECK(u_series_coefficient(2) == doctest::Approx(-1.0 / 12.0).epsilon(1e-15));
  CHECK(u_series_coefficient(3) == 0.0);
  CHECK(u_series_coefficient(4) == doctest::Approx(1.0 / 720.0).epsilon(1e-14));
  CHECK(u_series_coefficient(6) == doctest::Approx(-1.0 / 30240.0).epsilon(1e-13));
}

TEST_CASE("U on pure rotations matches the scalar function") {
  std::mt19937_64 rng(9);
  for (int i = 0; i < 100; ++i) {
    const Vec9 z = test_support::random_algebra(rng, 0.0, 3.1);
    const Vec3 phi = z.segment<3>(kR);
    const double th = phi.norm();
    const Mat3 W = skew(phi);
    const std::complex<double> f = f_scalar(th);
    // f(W) = f(0) I + (Im f / th) W + ((f(0) - Re f) / th^2) W^2, f(0) = -1.
    const Mat3 oracle =
        -Mat3::Identity() + (f.imag() / th) * W + ((-1.0 - f.real()) / (th * th)) * W * W;
    const Mat9 U = u_zeta(z);
    for (int b = 0; b < 3; ++b) CHECK(max_abs(U.block<3, 3>(3 * b, 3 * b) - oracle) < 1e-10);
    CHECK(max_abs(U.block<3, 3>(kR, kR) * left_jacobian(phi) + Mat3::Identity()) < 1e-10);
  }
}

TEST_CASE("U solves U (exp(ad) - I) = -ad") {
  std::mt19937_64 rng(10);
  for (int i = 0; i < 100; ++i) {
    const Vec9 z = test_support::random_algebra(rng, 3.0, 3.0);
    const Mat9 ad = ad_matrix(z);
    const Mat9 lhs = u_zeta(z) * (expm(ad) - Mat9::Identity());
    CHECK(max_abs(lhs + ad) < 1e-10 * std::max(1.0, max_abs(ad)));
  }
  CHECK(max_abs(u_zeta(Vec9::Zero()) + Mat9::Identity()) == 0.0);
}

TEST_CASE("left Jacobian and its inverse") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 30; ++i) {
    const Vec3 phi = test_support::random_algebra(rng, 0.0, 3.0).segment<3>(kR);
    CHECK(max_abs(left_jacobian(phi) * left_jacobian_inverse(phi) - Mat3::Identity()) < 1e-12);
    // J_l = sum W^k / (k+1)!, checked against the series.
    Mat3 series = Mat3::Zero();
    Mat3 term = Mat3::Identity();
    for (int k = 0; k < 60; ++k) {
      series += term;
      term = term * skew(phi) / static_cast<double>(k + 2);
    }
    CHECK(max_abs(left_jacobian(phi) - series) < 1e-12);
  }
}

TEST_CASE("projection returns the polar factor") {
  std::mt19937_64 rng(12);
  for (int i = 0; i < 20; ++i) {
    const GroupState X = exp_group(test_support::random_algebra(rng, 1.0, 2.0));
    Mat5 M = X.matrix();
    M.topLeftCorner<3, 3>() += 1e-5 * Eigen::Matrix3d::Random();
    const GroupState P = project_to_group(M);
    CHECK(P.is_valid(1e-12));
    // M_R = R S with S symmetric positive definite.
    const Mat3 S = P.R.transpose() * M.topLeftCorner<3, 3>();
    CHECK(max_abs(S - S.transpose()) < 1e-12);
    CHECK(S.eigenvalues().real().minCoeff() > 0.0);
    CHECK(P.v == M.block<3, 1>(0, 3));
  }
  Mat5 bad = Mat5::Identity();
  bad(0, 0) = -1.0;
  CHECK_THROWS_AS(project_to_group(bad), DomainError);
  bad(0, 0) = 1.5;
  CHECK_THROWS_AS(project_to_group(bad), DomainError);
}
