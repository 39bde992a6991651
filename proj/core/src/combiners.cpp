#include "qotac/combiners.hpp"

#include <Eigen/Cholesky>
#include <cmath>
#include <string>

#include "qotac/errors.hpp"

namespace qotac {

namespace {

constexpr double kResidualTolerance = 1e-6;

// Without regularization the Gram matrix has rank at most min(N, K); a pivot
// ratio near machine epsilon marks the numerically rank-deficient case that
// the factorization itself may or may not trip over.
constexpr double kPivotRatioFloor = 1e-7;

void check_sigma2(double sigma2) {
  if (!(sigma2 >= 0.0) || !std::isfinite(sigma2)) {
    throw ValidationError("noise variance must be finite and >= 0, got " +
                          std::to_string(sigma2));
  }
}

/// Factorization of a (regularized) Gram matrix that rejects numerically
/// singular systems instead of silently pseudo-inverting them. When
/// sigma2 = 0 the matrix is only semidefinite for rank-deficient channels,
/// and b = H 1 always lies in its range, so a residual test alone cannot
/// detect the deficiency; the pivot-ratio test does.
template <typename Matrix>
class GramSolver {
 public:
  GramSolver(const Matrix& gram, bool unregularized) : llt_(gram) {
    if (llt_.info() != Eigen::Success) {
      throw SingularSystem("regularized Gram matrix is not positive definite");
    }
    if (unregularized) {
      const auto diag = llt_.matrixLLT().diagonal().real();
      const double min_pivot = diag.minCoeff();
      const double max_pivot = diag.maxCoeff();
      if (!(min_pivot > kPivotRatioFloor * max_pivot)) {
        throw SingularSystem("Gram matrix is numerically rank deficient; "
                             "a positive noise variance is required");
      }
    }
  }

  template <typename Vector>
  Vector solve(const Matrix& gram, const Vector& b) const {
    Vector x = llt_.solve(b);
    const double scale = std::max(b.norm(), 1e-300);
    const double residual = (gram * x - b).norm() / scale;
    if (!(residual <= kResidualTolerance)) {
      throw SingularSystem("linear solve residual " + std::to_string(residual) +
                           " indicates a numerically singular system");
    }
    return x;
  }

 private:
  Eigen::LLT<Matrix> llt_;
};

}  // namespace

SelectorPair selectors(int n_dev) {
  if (n_dev < 1) {
    throw ValidationError("selector vectors need at least one device");
  }
  SelectorPair sel;
  sel.c_f = RVector::Zero(2 * n_dev);
  sel.c_g = RVector::Zero(2 * n_dev);
  sel.c_f.head(n_dev).setOnes();
  sel.c_g.tail(n_dev).setOnes();
  return sel;
}

ConventionalCombiner mmse_conventional(const ChannelMatrix& channel,
                                       double sigma2) {
  check_sigma2(sigma2);
  if (sigma2 == 0.0 && channel.rows() > channel.cols()) {
    throw SingularSystem("unregularized Gram matrix of a tall channel (N > K) "
                         "is rank deficient");
  }
  CMatrix gram = channel * channel.adjoint();
  gram.diagonal().array() += sigma2;
  const CVector rhs = channel * CVector::Ones(channel.cols());
  const GramSolver<CMatrix> solver(gram, sigma2 == 0.0);
  ConventionalCombiner combiner;
  combiner.u = solver.solve(gram, rhs);
  return combiner;
}

double combine_conventional(const ConventionalCombiner& combiner,
                            const CVector& y) {
  if (combiner.u.size() != y.size()) {
    throw DimensionMismatch("combiner length " +
                            std::to_string(combiner.u.size()) +
                            " does not match received vector length " +
                            std::to_string(y.size()));
  }
  // Eigen's dot conjugates the left operand: <u, y> = u^H y.
  return combiner.u.dot(y).real();
}

DualCombiner mmse_dual(const DecoupledChannel& channel, double sigma2) {
  return mmse_dual(channel, sigma2, selectors(static_cast<int>(channel.cols() / 2)));
}

DualCombiner mmse_dual(const DecoupledChannel& channel, double sigma2,
                       const SelectorPair& sel) {
  check_sigma2(sigma2);
  if (sel.c_f.size() != channel.cols() || sel.c_g.size() != channel.cols()) {
    throw DimensionMismatch("selector length does not match decoupled channel");
  }
  if (sigma2 == 0.0 && channel.rows() > channel.cols()) {
    throw SingularSystem("unregularized Gram matrix of a tall channel (N > K) "
                         "is rank deficient");
  }
  RMatrix gram = channel.matrix * channel.matrix.transpose();
  gram.diagonal().array() += 0.5 * sigma2;

  // One factorization serves both streams; the system matrix is shared.
  const GramSolver<RMatrix> solver(gram, sigma2 == 0.0);
  DualCombiner combiner;
  combiner.u_f = solver.solve(gram, RVector(channel.matrix * sel.c_f));
  combiner.u_g = solver.solve(gram, RVector(channel.matrix * sel.c_g));
  return combiner;
}

std::pair<double, double> combine_dual(const DualCombiner& combiner,
                                       const RVector& yd) {
  if (combiner.u_f.size() != yd.size() || combiner.u_g.size() != yd.size()) {
    throw DimensionMismatch("dual combiner length does not match received "
                            "vector length " + std::to_string(yd.size()));
  }
  return {combiner.u_f.dot(yd), combiner.u_g.dot(yd)};
}

double destandardize(double z, double mu, double rho, double scale, int n_dev) {
  if (!(rho > 0.0)) {
    throw ValidationError("rho must be positive");
  }
  if (!(scale > 0.0)) {
    throw ValidationError("power scale must be positive");
  }
  return rho * z / scale + static_cast<double>(n_dev) * mu;
}

}  // namespace qotac
