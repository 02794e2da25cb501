#pragma once

#include <Eigen/Dense>
#include <stdexcept>
#include <string>

namespace loglin {

using Vec3 = Eigen::Vector3d;
using Vec4 = Eigen::Matrix<double, 4, 1>;
using Vec6 = Eigen::Matrix<double, 6, 1>;
using Vec9 = Eigen::Matrix<double, 9, 1>;
using Mat3 = Eigen::Matrix3d;
using Mat5 = Eigen::Matrix<double, 5, 5>;
using Mat9 = Eigen::Matrix<double, 9, 9>;
using Mat9x4 = Eigen::Matrix<double, 9, 4>;
using Mat9x6 = Eigen::Matrix<double, 9, 6>;
using Mat4x9 = Eigen::Matrix<double, 4, 9>;
using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A precondition on the input was violated (e.g. outside the log chart).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A linear-algebra routine could not produce a trustworthy answer.
class NumericalError : public Error {
 public:
  using Error::Error;
};

/// Certification could not find a feasible gain or invariant set.
class InfeasibleError : public Error {
 public:
  using Error::Error;
};

}  // namespace loglin
