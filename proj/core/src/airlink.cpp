#include "qotac/airlink.hpp"

#include <string>

#include "qotac/errors.hpp"

namespace qotac {

ChannelMatrix sample_channel(int n_rx, int n_dev, RandomStream& rng) {
  ChannelMatrix h(n_rx, n_dev);
  for (int k = 0; k < n_dev; ++k) {
    for (int n = 0; n < n_rx; ++n) {
      h(n, k) = rng.cnormal(1.0);
    }
  }
  return h;
}

CVector sample_noise(const NoiseSpec& spec, int n_rx, RandomStream& rng) {
  CVector w(n_rx);
  if (spec.sigma2 == 0.0) {
    w.setZero();
    return w;
  }
  for (int n = 0; n < n_rx; ++n) {
    w(n) = rng.cnormal(spec.sigma2);
  }
  return w;
}

TransmitFrame encode_single(const RVector& t) {
  TransmitFrame frame;
  frame.in_phase = t;
  frame.quadrature = RVector::Zero(t.size());
  frame.symbols = t.cast<Complex>();
  return frame;
}

TransmitFrame encode_dual(const RVector& t_f, const RVector& t_g) {
  if (t_f.size() != t_g.size()) {
    throw LengthMismatch("in-phase stream length " + std::to_string(t_f.size()) +
                         " does not match quadrature stream length " +
                         std::to_string(t_g.size()));
  }
  TransmitFrame frame;
  frame.in_phase = t_f;
  frame.quadrature = t_g;
  frame.symbols.resize(t_f.size());
  for (Eigen::Index k = 0; k < t_f.size(); ++k) {
    frame.symbols(k) = Complex(t_f(k), t_g(k));
  }
  return frame;
}

CVector propagate(const ChannelMatrix& channel, const TransmitFrame& frame,
                  const CVector& noise) {
  if (channel.cols() != frame.symbols.size()) {
    throw DimensionMismatch("channel has " + std::to_string(channel.cols()) +
                            " device columns but frame carries " +
                            std::to_string(frame.symbols.size()) + " symbols");
  }
  if (channel.rows() != noise.size()) {
    throw DimensionMismatch("channel has " + std::to_string(channel.rows()) +
                            " receive rows but noise has length " +
                            std::to_string(noise.size()));
  }
  return channel * frame.symbols + noise;
}

DecoupledChannel decouple_matrix(const ChannelMatrix& channel) {
  const Eigen::Index n = channel.rows();
  const Eigen::Index k = channel.cols();
  DecoupledChannel out;
  out.matrix.resize(2 * n, 2 * k);
  out.matrix.topLeftCorner(n, k) = channel.real();
  out.matrix.topRightCorner(n, k) = -channel.imag();
  out.matrix.bottomLeftCorner(n, k) = channel.imag();
  out.matrix.bottomRightCorner(n, k) = channel.real();
  return out;
}

RVector decouple_vector(const CVector& v) {
  const Eigen::Index m = v.size();
  RVector out(2 * m);
  out.head(m) = v.real();
  out.tail(m) = v.imag();
  return out;
}

}  // namespace qotac
