#pragma once

#include <random>

#include <loglin/types.hpp>

namespace test_support {

inline double max_abs(const Eigen::MatrixXd& M) { return M.cwiseAbs().maxCoeff(); }

template <int N>
Eigen::Matrix<double, N, 1> random_vec(std::mt19937_64& rng, double scale) {
  std::uniform_real_distribution<double> u(-scale, scale);
  Eigen::Matrix<double, N, 1> v;
  for (int i = 0; i < N; ++i) v(i) = u(rng);
  return v;
}

// Random 9-vector with rotation part of norm below max_angle.
inline loglin::Vec9 random_algebra(std::mt19937_64& rng, double scale, double max_angle) {
  loglin::Vec9 x = random_vec<9>(rng, scale);
  std::uniform_real_distribution<double> u(0.0, max_angle);
  std::normal_distribution<double> n;
  const loglin::Vec3 dir(n(rng), n(rng), n(rng));
  x.segment<3>(6) = dir.normalized() * u(rng);
  return x;
}

}  // namespace test_support
