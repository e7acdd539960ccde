#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <stdexcept>
#include <string>

namespace divalg {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;
using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

inline constexpr double kDefaultTol = 1e-9;
// SVD rank cutoff is kRankCutoff * max(sigma_max, 1). The absolute floor keeps
// exactly-satisfied condition systems (numerically zero matrices) from
// reporting their noise as rank.
inline constexpr double kRankCutoff = 1e-8;

class error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class dimension_error : public error {
 public:
  using error::error;
};

class singular_error : public error {
 public:
  using error::error;
};

class convergence_error : public error {
 public:
  convergence_error(const std::string& what, double best_residual)
      : error(what), best_residual(best_residual) {}
  double best_residual;
};

class parse_error : public error {
 public:
  parse_error(const std::string& what, std::size_t position)
      : error(what), position(position) {}
  std::size_t position;
};

inline bool approx_eq(double a, double b, double tol) {
  return std::abs(a - b) <= tol * std::max({1.0, std::abs(a), std::abs(b)});
}

// Residual relative to max(1, scale of the operands).
inline double rel_residual(const Vec& diff, double scale) {
  return diff.cwiseAbs().maxCoeff() / std::max(1.0, scale);
}

}  // namespace divalg
