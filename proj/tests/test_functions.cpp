#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "qotac/errors.hpp"
#include "qotac/functions.hpp"

using namespace qotac;

namespace {

RVector vec(std::initializer_list<double> values) {
  RVector v(static_cast<Eigen::Index>(values.size()));
  Eigen::Index i = 0;
  for (double x : values) v(i++) = x;
  return v;
}

bool exact_eq(const RVector& a, const RVector& b) {
  return a.size() == b.size() && (a.array() == b.array()).all();
}

FunctionKind random_kind(std::mt19937_64& rng, int n_dev) {
  std::uniform_int_distribution<int> pick(0, 3);
  std::uniform_real_distribution<double> wdist(0.5, 1.5);
  switch (pick(rng)) {
    case 0: return FunctionKind::sum();
    case 1: return FunctionKind::mean();
    case 2: return FunctionKind::product();
    default: {
      RVector w(n_dev);
      for (int k = 0; k < n_dev; ++k) w(k) = wdist(rng);
      return FunctionKind::weighted_average(std::move(w));
    }
  }
}

}  // namespace

TEST_SUITE("functions") {

TEST_CASE("pre-processing maps per kind") {
  CHECK(exact_eq(pre_process(FunctionKind::sum(), vec({1, 2, 3})),
                 vec({1, 2, 3})));
  CHECK(exact_eq(pre_process(FunctionKind::mean(), vec({4, 5})), vec({4, 5})));

  const RVector logs =
      pre_process(FunctionKind::product(), vec({1.0, std::numbers::e}));
  CHECK(logs(0) == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(logs(1) == doctest::Approx(1.0).epsilon(1e-15));

  const RVector weighted = pre_process(
      FunctionKind::weighted_average(vec({0.25, 0.75})), vec({4, 8}));
  CHECK(exact_eq(weighted, vec({1, 6})));
}

TEST_CASE("pre-processing rejects invalid data") {
  CHECK_THROWS_AS(pre_process(FunctionKind::product(), vec({2.0, 0.0})),
                  NonPositiveDatum);
  CHECK_THROWS_AS(pre_process(FunctionKind::product(), vec({2.0, -1.0})),
                  NonPositiveDatum);
  CHECK_THROWS_AS(
      pre_process(FunctionKind::weighted_average(vec({0.5, 0.5})), vec({1.0})),
      LengthMismatch);
}

TEST_CASE("post-processing maps per kind") {
  CHECK(post_process(FunctionKind::sum(), 6.0, 3) == 6.0);
  CHECK(post_process(FunctionKind::product(), std::log(6.0), 2) ==
        doctest::Approx(6.0).epsilon(1e-14));
  CHECK(post_process(FunctionKind::mean(), 30.0, 20) == 1.5);
  CHECK(post_process(FunctionKind::weighted_average(vec({1.0})), 2.5, 1) == 2.5);
}

TEST_CASE("post-processing flags overflow") {
  CHECK_THROWS_AS(post_process(FunctionKind::product(), 1e10, 2),
                  OverflowError);
}

TEST_CASE("direct evaluation is the ground truth") {
  CHECK(evaluate_direct(FunctionKind::product(), vec({2, 3, 4})) ==
        doctest::Approx(24.0).epsilon(1e-14));
  CHECK(evaluate_direct(FunctionKind::mean(), vec({1, 2, 3})) == 2.0);
  CHECK(evaluate_direct(FunctionKind::weighted_average(vec({0.25, 0.75})),
                        vec({4, 8})) == 7.0);
}

TEST_CASE("uniform stream constants") {
  const Moments m1 =
      standardization_constants(FunctionKind::sum(), {1.0, 2.0});
  CHECK(m1.mu == doctest::Approx(1.5).epsilon(1e-15));
  CHECK(m1.rho == doctest::Approx(1.0 / std::sqrt(12.0)).epsilon(1e-15));

  const Moments m2 =
      standardization_constants(FunctionKind::sum(), {0.0, 2.0});
  CHECK(m2.mu == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(m2.rho == doctest::Approx(2.0 / std::sqrt(12.0)).epsilon(1e-15));
}

TEST_CASE("product stream constants match the quadrature oracle") {
  // Frozen from an independent Simpson quadrature of the moments of
  // ln U(0.8, 1.25); the 1e7-sample Monte Carlo check runs below.
  const Moments m =
      standardization_constants(FunctionKind::product(), {0.8, 1.25});
  CHECK(m.mu == doctest::Approx(0.016542844875844454).epsilon(1e-12));
  CHECK(m.rho == doctest::Approx(0.12819395081220808).epsilon(1e-12));

  std::mt19937_64 rng(20240811);
  std::uniform_real_distribution<double> unif(0.8, 1.25);
  const auto est = oracle::sample_moments(
      10000000, [&] { return std::log(unif(rng)); });
  CHECK(std::abs(m.mu - est.mean) <= 3.0 * est.se_mean);
  // Standard error of the sample stddev of a near-normal quantity.
  const double se_std = est.stddev / std::sqrt(2.0 * 1e7);
  CHECK(std::abs(m.rho - est.stddev) <= 5.0 * se_std);
}

TEST_CASE("product constants respect the base") {
  const Moments nat =
      standardization_constants(FunctionKind::product(), {0.8, 1.25});
  const Moments base2 =
      standardization_constants(FunctionKind::product(2.0), {0.8, 1.25});
  CHECK(base2.mu == doctest::Approx(nat.mu / std::log(2.0)).epsilon(1e-14));
  CHECK(base2.rho == doctest::Approx(nat.rho / std::log(2.0)).epsilon(1e-14));
}

TEST_CASE("empirical moments agree for every kind") {
  std::mt19937_64 rng(99);
  const long n = 1000000;

  auto check_kind = [&](const FunctionKind& kind, const UniformDist& dist) {
    const Moments m = standardization_constants(kind, dist);
    std::uniform_real_distribution<double> unif(dist.lo, dist.hi);
    if (kind.type() == FunctionType::WeightedAverage) {
      // Pooled constants: mean of per-device means, RMS of per-device stds.
      const RVector& w = kind.weights();
      double mean_acc = 0.0, var_acc = 0.0;
      for (Eigen::Index k = 0; k < w.size(); ++k) {
        const auto est = oracle::sample_moments(
            n / w.size(), [&] { return w(k) * unif(rng); });
        mean_acc += est.mean;
        var_acc += est.stddev * est.stddev;
      }
      const double pooled_mean = mean_acc / static_cast<double>(w.size());
      const double pooled_rms = std::sqrt(var_acc / static_cast<double>(w.size()));
      CHECK(m.mu == doctest::Approx(pooled_mean).epsilon(1e-2));
      CHECK(m.rho == doctest::Approx(pooled_rms).epsilon(1e-2));
      return;
    }
    auto phi = [&](double d) {
      switch (kind.type()) {
        case FunctionType::Product:
          return std::log(d) / std::log(kind.product_base());
        default:
          return d;
      }
    };
    const auto est = oracle::sample_moments(n, [&] { return phi(unif(rng)); });
    CHECK(std::abs(m.mu - est.mean) <= 5.0 * est.se_mean);
    const double se_std = est.stddev / std::sqrt(2.0 * static_cast<double>(n));
    CHECK(std::abs(m.rho - est.stddev) <= 5.0 * se_std);
  };

  check_kind(FunctionKind::sum(), {1.0, 2.0});
  check_kind(FunctionKind::mean(), {1.0, 2.0});
  check_kind(FunctionKind::product(), {0.8, 1.25});
  check_kind(FunctionKind::weighted_average(vec({0.6, 1.0, 1.4})), {1.0, 2.0});
}

TEST_CASE("degenerate distribution is rejected") {
  CHECK_THROWS_AS(standardization_constants(FunctionKind::sum(), {1.0, 1.0}),
                  DegenerateDistribution);
  CHECK_THROWS_AS(
      standardization_constants(FunctionKind::product(), {-0.5, 1.0}),
      NonPositiveDatum);
}

TEST_CASE("nomographic identity holds for random data") {
  std::mt19937_64 rng(4242);
  std::uniform_int_distribution<int> kdist(1, 32);
  for (int trial = 0; trial < 1000; ++trial) {
    const int n_dev = kdist(rng);
    const FunctionKind kind = random_kind(rng, n_dev);
    const UniformDist dist = default_data_dist(kind.type());
    std::uniform_real_distribution<double> unif(dist.lo, dist.hi);
    RVector d(n_dev);
    for (int k = 0; k < n_dev; ++k) d(k) = unif(rng);

    const double via_decomposition =
        post_process(kind, pre_process(kind, d).sum(), n_dev);
    const double direct = evaluate_direct(kind, d);
    CHECK(std::abs(via_decomposition - direct) <=
          1e-12 * std::max(1.0, std::abs(direct)));
  }
}

TEST_CASE("pre-processing is elementwise under permutation") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> unif(0.9, 1.9);
  const int n_dev = 8;
  RVector d(n_dev), w(n_dev);
  for (int k = 0; k < n_dev; ++k) {
    d(k) = unif(rng);
    w(k) = unif(rng);
  }
  std::vector<int> perm(n_dev);
  for (int k = 0; k < n_dev; ++k) perm[k] = k;
  std::shuffle(perm.begin(), perm.end(), rng);

  auto permuted = [&](const RVector& v) {
    RVector out(n_dev);
    for (int k = 0; k < n_dev; ++k) out(k) = v(perm[k]);
    return out;
  };

  for (const FunctionKind& kind :
       {FunctionKind::sum(), FunctionKind::mean(), FunctionKind::product()}) {
    CHECK(exact_eq(pre_process(kind, permuted(d)), permuted(pre_process(kind, d))));
  }
  // Weighted average: permuting data and weights jointly permutes the output.
  const RVector base = pre_process(FunctionKind::weighted_average(w), d);
  const RVector swapped =
      pre_process(FunctionKind::weighted_average(permuted(w)), permuted(d));
  CHECK(exact_eq(swapped, permuted(base)));
}

TEST_CASE("kind construction validates its parameters") {
  CHECK_THROWS_AS(FunctionKind::product(1.0), ValidationError);
  CHECK_THROWS_AS(FunctionKind::product(-2.0), ValidationError);
  CHECK_THROWS_AS(FunctionKind::weighted_average(RVector()), ValidationError);
  CHECK(FunctionKind::product(2.0).name() == "product");
  CHECK(FunctionKind::sum().name() == "sum");
  CHECK(FunctionKind::mean().name() == "mean");
  CHECK(FunctionKind::weighted_average(vec({1.0})).name() ==
        "weighted_average");
}

TEST_CASE("default data ranges") {
  CHECK(default_data_dist(FunctionType::Sum) == UniformDist{1.0, 2.0});
  CHECK(default_data_dist(FunctionType::Mean) == UniformDist{1.0, 2.0});
  CHECK(default_data_dist(FunctionType::WeightedAverage) ==
        UniformDist{1.0, 2.0});
  CHECK(default_data_dist(FunctionType::Product) == UniformDist{0.8, 1.25});
}

}  // TEST_SUITE
