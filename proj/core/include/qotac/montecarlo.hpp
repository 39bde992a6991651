#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qotac/airlink.hpp"
#include "qotac/functions.hpp"
#include "qotac/rng.hpp"
#include "qotac/types.hpp"

namespace qotac {

enum class Scheme { Conventional, Quadrature, Both };
enum class PowerMode { PerStreamUnit, EqualTotal };

std::string scheme_name(Scheme scheme);
std::string power_mode_name(PowerMode mode);

/// Full description of one experiment.
struct SimConfig {
  int n_rx = 0;
  int n_dev = 0;
  std::vector<double> snr_db;
  int n_trials = 20000;
  std::uint64_t seed = 1;
  Scheme scheme = Scheme::Both;
  PowerMode power_mode = PowerMode::PerStreamUnit;
  StreamSpec stream_f;
  std::optional<StreamSpec> stream_g;

  bool wants_conventional() const { return scheme != Scheme::Quadrature; }
  bool wants_quadrature() const { return scheme != Scheme::Conventional; }
};

/// Throws ValidationError when the configuration violates its invariants.
void validate(const SimConfig& cfg);

/// Truth/estimate/error record of one scheme in one trial. The g fields are
/// absent in single-function conventional runs.
struct TrialRecord {
  Scheme scheme = Scheme::Conventional;
  double snr_db = 0.0;
  int snr_index = 0;
  int trial_index = 0;
  double f_true = 0.0;
  double f_est = 0.0;
  double nmse_f = 0.0;
  std::optional<double> g_true;
  std::optional<double> g_est;
  std::optional<double> nmse_g;
};

/// Records produced by one trial, at most one per scheme.
struct TrialResult {
  std::optional<TrialRecord> conventional;
  std::optional<TrialRecord> quadrature;
};

/// Test hook: forces every channel use of a trial to a fixed matrix and/or
/// pins the noise variance (bypassing the SNR-derived value). The random
/// draws still happen so the draw sequence is unchanged.
struct TrialOverrides {
  std::optional<CMatrix> channel;
  std::optional<double> sigma2;
};

/// Every intermediate quantity of one trial, captured on demand for the
/// trial-dump command and the end-to-end pipeline oracle.
struct TrialTrace {
  RVector d_f, d_g;    // raw data draws
  RVector s_f, s_g;    // pre-processed symbols
  RVector x_f, x_g;    // standardized symbols, unit power
  double scale_quad = 1.0;
  CMatrix channel_1;   // first channel use (shared by both schemes)
  CVector noise_1;
  CMatrix channel_2;   // second use, conventional two-function baseline
  CVector noise_2;
  bool has_second_use = false;
  bool has_g = false;

  bool has_quadrature = false;
  CVector y_quad;
  RVector yd;
  RVector u_f, u_g;
  double z_f = 0.0, z_g = 0.0;
  double sum_f = 0.0, sum_g = 0.0;

  bool has_conventional = false;
  CVector y_conv_f, y_conv_g;
  CVector u_conv_f, u_conv_g;
  double zc_f = 0.0, zc_g = 0.0;
  double sumc_f = 0.0, sumc_g = 0.0;
};

/// Deterministic per-trial random stream, mixed from
/// (seed, snr_index, trial_index). Independent of execution order.
RandomStream trial_rng(std::uint64_t seed, std::uint32_t snr_index,
                       std::uint32_t trial_index);

/// Reserved stream for drawing weighted-average weights at config
/// resolution time; never collides with trial streams.
RandomStream weights_rng(std::uint64_t seed);

/// Runs one end-to-end trial: draw data and channel, standardize, encode,
/// propagate, combine, de-standardize, post-process and score. When the
/// scheme is Both, the conventional baseline reuses the quadrature
/// realization (channel_1, noise_1) for its first transmission.
TrialResult run_trial(const SimConfig& cfg, int snr_index, int trial_index,
                      const TrialOverrides* overrides = nullptr,
                      TrialTrace* trace = nullptr);

/// Per-trial normalized squared error ((est - truth)/truth)^2.
double nmse_per_trial(double est, double truth);

/// Error per delivered function pair: mean of the two per-stream NMSE
/// values, or the single-stream value in single-function mode. Throws
/// MissingStream when a second stream is expected but absent.
double per_computation_nmse(const TrialRecord& record, bool expect_pair);

/// Runs the full (snr x trial) grid, optionally across threads. Records are
/// returned sorted by (snr_index, trial_index, scheme) and are bit-identical
/// for any thread count. n_threads <= 0 selects the hardware concurrency.
std::vector<TrialRecord> run_experiment(const SimConfig& cfg,
                                        int n_threads = 0);

/// Empirical CDF of per-trial NMSE for one (scheme, stream) group.
struct CdfSeries {
  Scheme scheme = Scheme::Conventional;
  char stream = 'f';
  std::string function;
  std::vector<double> nmse;   // ascending
  std::vector<double> level;  // i/n, strictly increasing in (0, 1]
};

struct CdfResult {
  std::vector<CdfSeries> series;
};

CdfResult aggregate_cdf(const std::vector<TrialRecord>& records,
                        const SimConfig& cfg);

/// Mean per-computation NMSE per SNR point for one scheme.
struct SweepPoint {
  double snr_db = 0.0;
  double mean_nmse = 0.0;
  double mean_nmse_db = 0.0;
  long n_trials = 0;
  double stderr_nmse = 0.0;
};

struct SweepSeries {
  Scheme scheme = Scheme::Conventional;
  std::vector<SweepPoint> points;
};

struct SweepResult {
  std::vector<SweepSeries> series;
};

SweepResult aggregate_sweep(const std::vector<TrialRecord>& records,
                            const SimConfig& cfg);

}  // namespace qotac
