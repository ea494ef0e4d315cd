#pragma once

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace ftstab {

using Complex = std::complex<double>;
using Vec = Eigen::VectorXcd;
using RVec = Eigen::VectorXd;
using Mat = Eigen::MatrixXcd;

/// Steering is impossible: the Fattorini criterion fails (or an observation
/// value vanishes). Carries the offending mode indices.
class NotControllableError : public std::runtime_error {
 public:
  NotControllableError(const std::string& what, std::vector<int> indices)
      : std::runtime_error(what), failing(std::move(indices)) {}
  std::vector<int> failing;
};

/// lambda_0 collides with one of the harmonic eigenvalues 2ik*pi/L; the
/// eigenbasis construction and the moment problem are undefined.
class DegenerateSpectrumError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Id - K is numerically singular; the transformation cannot be inverted.
class SingularTransformError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace ftstab
