#pragma once

#include <string>

#include "qotac/types.hpp"

namespace qotac {

enum class FunctionType { Sum, Product, Mean, WeightedAverage };

/// A nomographic target function: the value psi(sum_k phi_k(d_k)) where
/// phi_k is the per-device pre-processing map and psi the receiver-side
/// post-processing map. Ships with the four concrete instances used by the
/// experiments (sum, product, arithmetic mean, weighted average).
class FunctionKind {
 public:
  FunctionKind() = default;  // plain sum

  static FunctionKind sum();
  static FunctionKind mean();
  /// Product with logarithm/exponentiation to `base`; base > 0, base != 1.
  static FunctionKind product(double base);
  static FunctionKind product();  // natural base
  static FunctionKind weighted_average(RVector weights);

  FunctionType type() const { return type_; }
  double product_base() const { return base_; }
  const RVector& weights() const { return weights_; }

  /// Lowercase identifier used in configs and CSV output.
  std::string name() const;

  bool operator==(const FunctionKind& other) const;

 private:
  FunctionType type_ = FunctionType::Sum;
  double base_ = 0.0;
  RVector weights_;
};

/// Device-side pre-processing phi applied elementwise to the data vector.
RVector pre_process(const FunctionKind& kind, const RVector& d);

/// Receiver-side post-processing psi applied to the aggregated value.
double post_process(const FunctionKind& kind, double x, int n_dev);

/// Ground-truth evaluation of the target function, bypassing the
/// nomographic decomposition. Serves as the oracle for NMSE.
double evaluate_direct(const FunctionKind& kind, const RVector& d);

/// Analytic mean/standard deviation of the pre-processed symbol phi(d)
/// when d follows `dist`. Used to standardize transmit streams.
struct Moments {
  double mu = 0.0;
  double rho = 0.0;

  bool operator==(const Moments&) const = default;
};

Moments standardization_constants(const FunctionKind& kind,
                                  const UniformDist& dist);

/// One transmit stream: target function, data distribution and the
/// standardization constants of its pre-processed symbols.
struct StreamSpec {
  FunctionKind kind;
  UniformDist data_dist;
  double mu = 0.0;
  double rho = 0.0;
};

/// Builds a StreamSpec, computing mu/rho from the analytic moments.
StreamSpec make_stream_spec(FunctionKind kind, UniformDist dist);

/// Data range used when a config does not specify one: uniform(1,2) for
/// identity-style pre-processing, uniform(0.8,1.25) for the log-domain
/// product stream.
UniformDist default_data_dist(FunctionType type);

}  // namespace qotac
