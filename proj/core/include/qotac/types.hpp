#pragma once

#include <Eigen/Dense>
#include <complex>

namespace qotac {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RMatrix = Eigen::MatrixXd;
using RVector = Eigen::VectorXd;

/// Closed interval descriptor for uniform data distributions, lo < hi.
struct UniformDist {
  double lo = 0.0;
  double hi = 0.0;

  double mean() const { return 0.5 * (lo + hi); }
  double width() const { return hi - lo; }

  bool operator==(const UniformDist&) const = default;
};

}  // namespace qotac
