#pragma once

#include "qotac/rng.hpp"
#include "qotac/types.hpp"

namespace qotac {

/// N x K uplink channel, one column per device. Entries are sampled i.i.d.
/// CN(0,1) (Rayleigh fading); the receiver is assumed to know it exactly.
using ChannelMatrix = CMatrix;

/// Complex noise variance per receive antenna, total over both IQ parts.
struct NoiseSpec {
  double sigma2 = 0.0;
};

/// The K transmit symbols of one channel use. `symbols` always equals
/// in_phase + j*quadrature entrywise; single-stream frames carry a zero
/// quadrature component.
struct TransmitFrame {
  CVector symbols;
  RVector in_phase;
  RVector quadrature;
};

/// Real 2N x 2K reformulation [[Re H, -Im H], [Im H, Re H]] of a complex
/// channel. Produced by decouple_matrix only.
struct DecoupledChannel {
  RMatrix matrix;

  Eigen::Index rows() const { return matrix.rows(); }
  Eigen::Index cols() const { return matrix.cols(); }
};

/// Draws an N x K channel with i.i.d. CN(0,1) entries, column by column.
ChannelMatrix sample_channel(int n_rx, int n_dev, RandomStream& rng);

/// Draws length-N noise with i.i.d. CN(0, sigma2) entries; sigma2 == 0
/// yields the zero vector without consuming random draws.
CVector sample_noise(const NoiseSpec& spec, int n_rx, RandomStream& rng);

/// Real symbols on the in-phase component, quadrature left at zero.
TransmitFrame encode_single(const RVector& t);

/// Two real streams on the in-phase and quadrature components.
TransmitFrame encode_dual(const RVector& t_f, const RVector& t_g);

/// Received signal y = H s + w of the superposed multiple-access uplink
/// (all device precoders fixed at 1).
CVector propagate(const ChannelMatrix& channel, const TransmitFrame& frame,
                  const CVector& noise);

/// Complex-to-real block reformulation of the channel.
DecoupledChannel decouple_matrix(const ChannelMatrix& channel);

/// Stacks [Re v; Im v].
RVector decouple_vector(const CVector& v);

}  // namespace qotac
