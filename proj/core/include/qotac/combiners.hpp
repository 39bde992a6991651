#pragma once

#include <utility>

#include "qotac/airlink.hpp"
#include "qotac/types.hpp"

namespace qotac {

/// Receive vector of the conventional single-stream scheme,
/// u = (H H^H + sigma2 I)^{-1} H 1.
struct ConventionalCombiner {
  CVector u;
};

/// The pair of real receive vectors of the dual-stream scheme, one per
/// target function, both solved from the same regularized Gram system.
struct DualCombiner {
  RVector u_f;
  RVector u_g;
};

/// Stream selector vectors c_f = [1_K; 0_K], c_g = [0_K; 1_K] of length 2K.
struct SelectorPair {
  RVector c_f;
  RVector c_g;
};

SelectorPair selectors(int n_dev);

/// Conventional MMSE combiner. Solves (H H^H + sigma2 I) u = H 1 through a
/// Cholesky factorization; throws SingularSystem when the regularized Gram
/// matrix is numerically singular (sigma2 = 0 with rank-deficient H).
ConventionalCombiner mmse_conventional(const ChannelMatrix& channel,
                                       double sigma2);

/// Real part of the conjugated inner product <u, y>.
double combine_conventional(const ConventionalCombiner& combiner,
                            const CVector& y);

/// Dual-stream MMSE combiners from one factorization of
/// Hd Hd^T + (sigma2/2) I, right-hand sides Hd c_f and Hd c_g.
DualCombiner mmse_dual(const DecoupledChannel& channel, double sigma2);
DualCombiner mmse_dual(const DecoupledChannel& channel, double sigma2,
                       const SelectorPair& sel);

/// (u_f^T yd, u_g^T yd).
std::pair<double, double> combine_dual(const DualCombiner& combiner,
                                       const RVector& yd);

/// Undoes the transmit standardization: each device sent
/// scale * (s_k - mu) / rho, so the sum estimate z maps back to
/// rho * z / scale + K * mu.
double destandardize(double z, double mu, double rho, double scale, int n_dev);

}  // namespace qotac
