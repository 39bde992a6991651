#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "qotac/airlink.hpp"
#include "qotac/errors.hpp"
#include "qotac/montecarlo.hpp"

using namespace qotac;

namespace {

CMatrix random_channel(std::mt19937_64& rng, int n, int k) {
  std::normal_distribution<double> gauss(0.0, std::sqrt(0.5));
  CMatrix h(n, k);
  for (int c = 0; c < k; ++c) {
    for (int r = 0; r < n; ++r) h(r, c) = Complex(gauss(rng), gauss(rng));
  }
  return h;
}

}  // namespace

TEST_SUITE("airlink") {

TEST_CASE("channel sampling has unit entry variance") {
  RandomStream rng = trial_rng(11, 0, 0);
  const int n = 2, k = 3;
  double sum_sq = 0.0;
  long count = 0;
  while (count < 100000) {
    const ChannelMatrix h = sample_channel(n, k, rng);
    CHECK(h.rows() == n);
    CHECK(h.cols() == k);
    sum_sq += h.array().abs2().sum();
    count += n * k;
  }
  const double per_entry = sum_sq / static_cast<double>(count);
  CHECK(per_entry >= 0.99);
  CHECK(per_entry <= 1.01);
}

TEST_CASE("single-entry channel is finite") {
  RandomStream rng = trial_rng(3, 0, 0);
  const ChannelMatrix h = sample_channel(1, 1, rng);
  CHECK(std::isfinite(h(0, 0).real()));
  CHECK(std::isfinite(h(0, 0).imag()));
}

TEST_CASE("channel sampling is deterministic per stream") {
  RandomStream a = trial_rng(42, 1, 7);
  RandomStream b = trial_rng(42, 1, 7);
  const ChannelMatrix ha = sample_channel(4, 5, a);
  const ChannelMatrix hb = sample_channel(4, 5, b);
  CHECK((ha.array() == hb.array()).all());
}

TEST_CASE("noise sampling: zero variance gives the zero vector") {
  RandomStream rng = trial_rng(1, 0, 0);
  const CVector w = sample_noise({0.0}, 4, rng);
  CHECK(w.size() == 4);
  CHECK(w.norm() == 0.0);
}

TEST_CASE("noise sampling has the configured power") {
  RandomStream rng = trial_rng(5, 0, 0);
  double acc = 0.0;
  const long n = 100000;
  for (long i = 0; i < n; ++i) {
    const CVector w = sample_noise({2.0}, 1, rng);
    acc += std::norm(w(0));
  }
  const double mean_power = acc / static_cast<double>(n);
  CHECK(mean_power >= 1.98);
  CHECK(mean_power <= 2.02);
}

TEST_CASE("noise sampling is deterministic per stream") {
  RandomStream a = trial_rng(9, 2, 3);
  RandomStream b = trial_rng(9, 2, 3);
  CHECK((sample_noise({1.0}, 6, a).array() == sample_noise({1.0}, 6, b).array())
            .all());
}

TEST_CASE("single-stream encoding puts symbols on the in-phase axis") {
  RVector t(2);
  t << 1.0, -2.0;
  const TransmitFrame frame = encode_single(t);
  CHECK(frame.symbols(0) == Complex(1.0, 0.0));
  CHECK(frame.symbols(1) == Complex(-2.0, 0.0));
  CHECK(frame.quadrature.norm() == 0.0);

  const TransmitFrame zero = encode_single(RVector::Zero(1));
  CHECK(zero.symbols(0) == Complex(0.0, 0.0));

  RVector half = RVector::Constant(3, 0.5);
  const TransmitFrame frame3 = encode_single(half);
  for (int k = 0; k < 3; ++k) CHECK(frame3.symbols(k).imag() == 0.0);
}

TEST_CASE("dual-stream encoding fills both axes") {
  RVector tf(1), tg(1);
  tf << 3.0;
  tg << 5.0;
  const TransmitFrame frame = encode_dual(tf, tg);
  CHECK(frame.symbols(0) == Complex(3.0, 5.0));

  RVector a(2), b(2);
  a << 1.0, 0.0;
  b << 0.0, 1.0;
  const TransmitFrame f2 = encode_dual(a, b);
  CHECK(f2.symbols(0) == Complex(1.0, 0.0));
  CHECK(f2.symbols(1) == Complex(0.0, 1.0));
}

TEST_CASE("dual encoding with zero quadrature equals single encoding") {
  RVector t(3);
  t << 0.25, -1.5, 2.0;
  const TransmitFrame dual = encode_dual(t, RVector::Zero(3));
  const TransmitFrame single = encode_single(t);
  CHECK((dual.symbols.array() == single.symbols.array()).all());
  CHECK((dual.in_phase.array() == single.in_phase.array()).all());
  CHECK((dual.quadrature.array() == single.quadrature.array()).all());
}

TEST_CASE("dual encoding rejects mismatched lengths") {
  CHECK_THROWS_AS(encode_dual(RVector::Zero(2), RVector::Zero(3)),
                  LengthMismatch);
}

TEST_CASE("propagation examples") {
  // identity channel
  CMatrix h1(1, 1);
  h1(0, 0) = Complex(1.0, 0.0);
  RVector tf(1), tg(1);
  tf << 3.0;
  tg << 5.0;
  CVector w0 = CVector::Zero(1);
  CHECK(propagate(h1, encode_dual(tf, tg), w0)(0) == Complex(3.0, 5.0));

  // pure phase rotation: j * (1 + j) = -1 + j
  CMatrix hj(1, 1);
  hj(0, 0) = Complex(0.0, 1.0);
  RVector one(1), one2(1);
  one << 1.0;
  one2 << 1.0;
  CHECK(propagate(hj, encode_dual(one, one2), w0)(0) == Complex(-1.0, 1.0));

  // superposition with noise
  CMatrix hrow(1, 2);
  hrow(0, 0) = Complex(1.0, 0.0);
  hrow(0, 1) = Complex(1.0, 0.0);
  RVector pair(2);
  pair << 2.0, 3.0;
  CVector w(1);
  w(0) = Complex(1.0, 0.0);
  CHECK(propagate(hrow, encode_single(pair), w)(0) == Complex(6.0, 0.0));
}

TEST_CASE("propagation rejects inconsistent dimensions") {
  CMatrix h(2, 3);
  h.setZero();
  CHECK_THROWS_AS(propagate(h, encode_single(RVector::Zero(2)), CVector::Zero(2)),
                  DimensionMismatch);
  CHECK_THROWS_AS(propagate(h, encode_single(RVector::Zero(3)), CVector::Zero(1)),
                  DimensionMismatch);
}

TEST_CASE("matrix decoupling block layout") {
  CMatrix h(1, 1);
  h(0, 0) = Complex(1.0, 2.0);
  const DecoupledChannel d = decouple_matrix(h);
  CHECK(d.matrix(0, 0) == 1.0);
  CHECK(d.matrix(0, 1) == -2.0);
  CHECK(d.matrix(1, 0) == 2.0);
  CHECK(d.matrix(1, 1) == 1.0);

  CMatrix hj(1, 1);
  hj(0, 0) = Complex(0.0, 1.0);
  const DecoupledChannel dj = decouple_matrix(hj);
  CHECK(dj.matrix(0, 0) == 0.0);
  CHECK(dj.matrix(0, 1) == -1.0);
  CHECK(dj.matrix(1, 0) == 1.0);
  CHECK(dj.matrix(1, 1) == 0.0);
}

TEST_CASE("real channels decouple to block-diagonal form") {
  std::mt19937_64 rng(17);
  std::normal_distribution<double> gauss;
  CMatrix h(3, 2);
  for (int r = 0; r < 3; ++r) {
    for (int c = 0; c < 2; ++c) h(r, c) = Complex(gauss(rng), 0.0);
  }
  const DecoupledChannel d = decouple_matrix(h);
  CHECK((d.matrix.topLeftCorner(3, 2).array() == h.real().array()).all());
  CHECK(d.matrix.topRightCorner(3, 2).norm() == 0.0);
  CHECK(d.matrix.bottomLeftCorner(3, 2).norm() == 0.0);
  CHECK((d.matrix.bottomRightCorner(3, 2).array() == h.real().array()).all());
}

TEST_CASE("decoupled blocks are exact copies") {
  std::mt19937_64 rng(23);
  const CMatrix h = random_channel(rng, 4, 3);
  const DecoupledChannel d = decouple_matrix(h);
  CHECK((d.matrix.topLeftCorner(4, 3).array() ==
         d.matrix.bottomRightCorner(4, 3).array()).all());
  CHECK((d.matrix.topRightCorner(4, 3).array() ==
         (-d.matrix.bottomLeftCorner(4, 3)).array()).all());
}

TEST_CASE("vector decoupling stacks real over imaginary") {
  CVector v(1);
  v(0) = Complex(3.0, 5.0);
  const RVector d = decouple_vector(v);
  CHECK(d(0) == 3.0);
  CHECK(d(1) == 5.0);

  CVector v2(2);
  v2(0) = Complex(1.0, 0.0);
  v2(1) = Complex(0.0, 2.0);
  const RVector d2 = decouple_vector(v2);
  CHECK(d2(0) == 1.0);
  CHECK(d2(1) == 0.0);
  CHECK(d2(2) == 0.0);
  CHECK(d2(3) == 2.0);

  CHECK(decouple_vector(CVector::Zero(3)).norm() == 0.0);
}

TEST_CASE("decoupling is an isomorphism of the complex product") {
  std::mt19937_64 rng(31);
  std::uniform_int_distribution<int> dim(1, 8);
  std::normal_distribution<double> gauss;
  for (int trial = 0; trial < 1000; ++trial) {
    const int n = dim(rng), k = dim(rng);
    const CMatrix h = random_channel(rng, n, k);
    CVector s(k);
    for (int i = 0; i < k; ++i) s(i) = Complex(gauss(rng), gauss(rng));

    const RVector lhs = decouple_matrix(h).matrix * decouple_vector(s);
    const RVector rhs = decouple_vector(h * s);
    const double scale = std::max(
        {1.0, h.array().abs().maxCoeff(), s.array().abs().maxCoeff()});
    CHECK((lhs - rhs).cwiseAbs().maxCoeff() <= 1e-12 * scale);
  }
}

TEST_CASE("decoupling doubles the squared Frobenius norm") {
  std::mt19937_64 rng(37);
  for (int trial = 0; trial < 100; ++trial) {
    const CMatrix h = random_channel(rng, 5, 4);
    const double complex_norm = h.squaredNorm();
    const double real_norm = decouple_matrix(h).matrix.squaredNorm();
    CHECK(real_norm == doctest::Approx(2.0 * complex_norm).epsilon(1e-12));
  }
}

TEST_CASE("propagation is linear in the transmitted frame") {
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> coef(-2.0, 2.0);
  std::normal_distribution<double> gauss;
  for (int trial = 0; trial < 100; ++trial) {
    const CMatrix h = random_channel(rng, 3, 4);
    RVector s1(4), s2(4), q1(4), q2(4);
    for (int i = 0; i < 4; ++i) {
      s1(i) = gauss(rng);
      s2(i) = gauss(rng);
      q1(i) = gauss(rng);
      q2(i) = gauss(rng);
    }
    const double a = coef(rng), b = coef(rng);
    const CVector zero = CVector::Zero(3);
    const CVector combined = propagate(
        h, encode_dual(a * s1 + b * s2, a * q1 + b * q2), zero);
    const CVector split = a * propagate(h, encode_dual(s1, q1), zero) +
                          b * propagate(h, encode_dual(s2, q2), zero);
    const double scale = std::max(1.0, split.norm());
    CHECK((combined - split).norm() <= 1e-12 * scale);
  }
}

}  // TEST_SUITE
