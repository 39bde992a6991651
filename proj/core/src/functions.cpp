#include "qotac/functions.hpp"

#include <cmath>
#include <numbers>

#include "qotac/errors.hpp"

namespace qotac {

namespace {

void check_product_data(const RVector& d) {
  for (Eigen::Index k = 0; k < d.size(); ++k) {
    if (!(d[k] > 0.0)) {
      throw NonPositiveDatum("product stream requires d_k > 0, got " +
                             std::to_string(d[k]) + " at index " +
                             std::to_string(k));
    }
  }
}

void check_weights_length(const RVector& w, Eigen::Index n) {
  if (w.size() != n) {
    throw LengthMismatch("weight vector length " + std::to_string(w.size()) +
                         " does not match data length " + std::to_string(n));
  }
}

}  // namespace

FunctionKind FunctionKind::sum() {
  FunctionKind k;
  k.type_ = FunctionType::Sum;
  return k;
}

FunctionKind FunctionKind::mean() {
  FunctionKind k;
  k.type_ = FunctionType::Mean;
  return k;
}

FunctionKind FunctionKind::product(double base) {
  if (!(base > 0.0) || base == 1.0 || !std::isfinite(base)) {
    throw ValidationError("product base must be positive, finite and != 1");
  }
  FunctionKind k;
  k.type_ = FunctionType::Product;
  k.base_ = base;
  return k;
}

FunctionKind FunctionKind::product() { return product(std::numbers::e); }

FunctionKind FunctionKind::weighted_average(RVector weights) {
  if (weights.size() == 0) {
    throw ValidationError("weighted average requires a non-empty weight vector");
  }
  if (!weights.allFinite()) {
    throw ValidationError("weighted average weights must be finite");
  }
  FunctionKind k;
  k.type_ = FunctionType::WeightedAverage;
  k.weights_ = std::move(weights);
  return k;
}

std::string FunctionKind::name() const {
  switch (type_) {
    case FunctionType::Sum: return "sum";
    case FunctionType::Product: return "product";
    case FunctionType::Mean: return "mean";
    case FunctionType::WeightedAverage: return "weighted_average";
  }
  return "unknown";
}

bool FunctionKind::operator==(const FunctionKind& other) const {
  if (type_ != other.type_) return false;
  if (type_ == FunctionType::Product) return base_ == other.base_;
  if (type_ == FunctionType::WeightedAverage) {
    return weights_.size() == other.weights_.size() &&
           (weights_.array() == other.weights_.array()).all();
  }
  return true;
}

RVector pre_process(const FunctionKind& kind, const RVector& d) {
  switch (kind.type()) {
    case FunctionType::Sum:
    case FunctionType::Mean:
      return d;
    case FunctionType::Product: {
      check_product_data(d);
      const double inv_log_base = 1.0 / std::log(kind.product_base());
      return d.array().log() * inv_log_base;
    }
    case FunctionType::WeightedAverage: {
      check_weights_length(kind.weights(), d.size());
      return kind.weights().cwiseProduct(d);
    }
  }
  throw Error("unreachable function type");
}

double post_process(const FunctionKind& kind, double x, int n_dev) {
  switch (kind.type()) {
    case FunctionType::Sum:
    case FunctionType::WeightedAverage:
      return x;
    case FunctionType::Mean:
      return x / static_cast<double>(n_dev);
    case FunctionType::Product: {
      const double value = std::pow(kind.product_base(), x);
      if (!std::isfinite(value)) {
        throw OverflowError("post-processing overflow: base^" +
                            std::to_string(x) + " is not finite");
      }
      return value;
    }
  }
  throw Error("unreachable function type");
}

double evaluate_direct(const FunctionKind& kind, const RVector& d) {
  switch (kind.type()) {
    case FunctionType::Sum:
      return d.sum();
    case FunctionType::Mean:
      return d.mean();
    case FunctionType::Product: {
      check_product_data(d);
      return d.prod();
    }
    case FunctionType::WeightedAverage: {
      check_weights_length(kind.weights(), d.size());
      return kind.weights().dot(d);
    }
  }
  throw Error("unreachable function type");
}

Moments standardization_constants(const FunctionKind& kind,
                                  const UniformDist& dist) {
  if (!std::isfinite(dist.lo) || !std::isfinite(dist.hi) || dist.hi < dist.lo) {
    throw ValidationError("data distribution bounds must be finite with lo <= hi");
  }
  if (dist.hi == dist.lo) {
    throw DegenerateDistribution("uniform(" + std::to_string(dist.lo) + "," +
                                 std::to_string(dist.hi) +
                                 ") has zero spread; rho would vanish");
  }
  const double uniform_mean = dist.mean();
  const double uniform_std = dist.width() / std::sqrt(12.0);

  switch (kind.type()) {
    case FunctionType::Sum:
    case FunctionType::Mean:
      return {uniform_mean, uniform_std};
    case FunctionType::WeightedAverage: {
      // Pooled moments of the heteroscedastic symbols w_k * d_k: mean of the
      // per-device means, RMS of the per-device standard deviations. A single
      // (mu, rho) pair keeps the de-standardization affine.
      const RVector& w = kind.weights();
      const double mean_w = w.mean();
      const double rms_w = std::sqrt(w.array().square().mean());
      return {mean_w * uniform_mean, rms_w * uniform_std};
    }
    case FunctionType::Product: {
      if (!(dist.lo > 0.0)) {
        throw NonPositiveDatum("product stream requires a strictly positive "
                               "data distribution support");
      }
      // Closed-form moments of ln U(lo,hi):
      //   E[ln d]   = (hi ln hi - lo ln lo)/(hi - lo) - 1
      //   E[ln^2 d] = [x((ln x)^2 - 2 ln x + 2)]_{lo}^{hi} / (hi - lo)
      const double lo = dist.lo, hi = dist.hi, width = dist.width();
      const double log_lo = std::log(lo), log_hi = std::log(hi);
      const double mean_ln = (hi * log_hi - lo * log_lo) / width - 1.0;
      const double second_ln =
          (hi * (log_hi * log_hi - 2.0 * log_hi + 2.0) -
           lo * (log_lo * log_lo - 2.0 * log_lo + 2.0)) /
          width;
      const double var_ln = second_ln - mean_ln * mean_ln;
      const double log_base = std::log(kind.product_base());
      return {mean_ln / log_base, std::sqrt(var_ln) / std::abs(log_base)};
    }
  }
  throw Error("unreachable function type");
}

StreamSpec make_stream_spec(FunctionKind kind, UniformDist dist) {
  const Moments m = standardization_constants(kind, dist);
  return {std::move(kind), dist, m.mu, m.rho};
}

UniformDist default_data_dist(FunctionType type) {
  if (type == FunctionType::Product) return {0.8, 1.25};
  return {1.0, 2.0};
}

}  // namespace qotac
