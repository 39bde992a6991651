#include "qotac/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

#include "qotac/combiners.hpp"
#include "qotac/errors.hpp"

namespace qotac {

namespace {

// Stream key reserved for weight drawing; trial snr indices are bounded by
// the configured SNR list and can never reach it.
constexpr std::uint64_t kWeightsStreamTag = 0xffffffffffffffffull;

double noise_variance(double snr_db) { return std::pow(10.0, -snr_db / 10.0); }

RVector draw_data(const UniformDist& dist, int n_dev, RandomStream& rng) {
  RVector d(n_dev);
  for (int k = 0; k < n_dev; ++k) {
    d(k) = rng.uniform(dist.lo, dist.hi);
  }
  return d;
}

RVector standardize(const RVector& s, const StreamSpec& spec) {
  return (s.array() - spec.mu) / spec.rho;
}

struct StreamEstimate {
  double truth = 0.0;
  double est = 0.0;
  double nmse = 0.0;
};

StreamEstimate score_stream(const StreamSpec& spec, const RVector& d, double z,
                            double scale, int n_dev, double* sum_out) {
  const double sum_est = destandardize(z, spec.mu, spec.rho, scale, n_dev);
  if (sum_out != nullptr) *sum_out = sum_est;
  StreamEstimate out;
  out.truth = evaluate_direct(spec.kind, d);
  out.est = post_process(spec.kind, sum_est, n_dev);
  out.nmse = nmse_per_trial(out.est, out.truth);
  return out;
}

}  // namespace

std::string scheme_name(Scheme scheme) {
  switch (scheme) {
    case Scheme::Conventional: return "conventional";
    case Scheme::Quadrature: return "quadrature";
    case Scheme::Both: return "both";
  }
  return "unknown";
}

std::string power_mode_name(PowerMode mode) {
  return mode == PowerMode::PerStreamUnit ? "per_stream_unit" : "equal_total";
}

void validate(const SimConfig& cfg) {
  if (cfg.n_rx < 1) throw ValidationError("n_rx must be >= 1");
  if (cfg.n_dev < 1) throw ValidationError("n_dev must be >= 1");
  if (cfg.n_trials < 1) throw ValidationError("n_trials must be >= 1");
  if (cfg.snr_db.empty()) throw ValidationError("snr_db must not be empty");
  for (double snr : cfg.snr_db) {
    if (!std::isfinite(snr)) throw ValidationError("snr_db values must be finite");
  }
  if (!(cfg.stream_f.rho > 0.0)) throw ValidationError("stream f rho must be > 0");
  if (cfg.stream_g && !(cfg.stream_g->rho > 0.0)) {
    throw ValidationError("stream g rho must be > 0");
  }
  if (cfg.wants_quadrature() && !cfg.stream_g) {
    throw ValidationError("the quadrature scheme needs a second stream; set "
                          "function_g");
  }
  auto check_weights = [&](const StreamSpec& spec, const char* label) {
    if (spec.kind.type() == FunctionType::WeightedAverage &&
        spec.kind.weights().size() != cfg.n_dev) {
      throw ValidationError(std::string("weighted-average weights of stream ") +
                            label + " must have length n_dev");
    }
  };
  check_weights(cfg.stream_f, "f");
  if (cfg.stream_g) check_weights(*cfg.stream_g, "g");
}

RandomStream trial_rng(std::uint64_t seed, std::uint32_t snr_index,
                       std::uint32_t trial_index) {
  return RandomStream(seed, snr_index, trial_index);
}

RandomStream weights_rng(std::uint64_t seed) {
  return RandomStream(seed, kWeightsStreamTag, 0);
}

double nmse_per_trial(double est, double truth) {
  if (std::abs(truth) < 1e-9) {
    throw DegenerateTruth("truth value " + std::to_string(truth) +
                          " too close to zero for a normalized error");
  }
  const double rel = (est - truth) / truth;
  return rel * rel;
}

double per_computation_nmse(const TrialRecord& record, bool expect_pair) {
  if (expect_pair) {
    if (!record.nmse_g) {
      throw MissingStream("record lacks the second stream expected by the "
                          "per-computation accounting");
    }
    return 0.5 * (record.nmse_f + *record.nmse_g);
  }
  return record.nmse_f;
}

TrialResult run_trial(const SimConfig& cfg, int snr_index, int trial_index,
                      const TrialOverrides* overrides, TrialTrace* trace) {
  const double snr_db = cfg.snr_db.at(static_cast<std::size_t>(snr_index));
  const double sigma2 = overrides && overrides->sigma2
                            ? *overrides->sigma2
                            : noise_variance(snr_db);
  const bool has_g = cfg.stream_g.has_value();
  const bool two_use_conventional = cfg.wants_conventional() && has_g;

  RandomStream rng = trial_rng(cfg.seed, static_cast<std::uint32_t>(snr_index),
                               static_cast<std::uint32_t>(trial_index));

  // Fixed draw order: d_f, d_g, channel_1, noise_1, then the second channel
  // use when the conventional baseline delivers two functions.
  const RVector d_f = draw_data(cfg.stream_f.data_dist, cfg.n_dev, rng);
  RVector d_g;
  if (has_g) d_g = draw_data(cfg.stream_g->data_dist, cfg.n_dev, rng);

  CMatrix channel_1 = sample_channel(cfg.n_rx, cfg.n_dev, rng);
  CVector noise_1 = sample_noise({sigma2}, cfg.n_rx, rng);
  CMatrix channel_2;
  CVector noise_2;
  if (two_use_conventional) {
    channel_2 = sample_channel(cfg.n_rx, cfg.n_dev, rng);
    noise_2 = sample_noise({sigma2}, cfg.n_rx, rng);
  }
  if (overrides && overrides->channel) {
    channel_1 = *overrides->channel;
    if (two_use_conventional) channel_2 = *overrides->channel;
  }

  const RVector s_f = pre_process(cfg.stream_f.kind, d_f);
  const RVector x_f = standardize(s_f, cfg.stream_f);
  RVector s_g, x_g;
  if (has_g) {
    s_g = pre_process(cfg.stream_g->kind, d_g);
    x_g = standardize(s_g, *cfg.stream_g);
  }

  const double scale_quad =
      cfg.power_mode == PowerMode::PerStreamUnit ? 1.0 : 1.0 / std::sqrt(2.0);

  if (trace != nullptr) {
    trace->d_f = d_f;
    trace->s_f = s_f;
    trace->x_f = x_f;
    trace->has_g = has_g;
    if (has_g) {
      trace->d_g = d_g;
      trace->s_g = s_g;
      trace->x_g = x_g;
    }
    trace->scale_quad = scale_quad;
    trace->channel_1 = channel_1;
    trace->noise_1 = noise_1;
    trace->has_second_use = two_use_conventional;
    if (two_use_conventional) {
      trace->channel_2 = channel_2;
      trace->noise_2 = noise_2;
    }
  }

  TrialResult result;

  if (cfg.wants_quadrature()) {
    const TransmitFrame frame =
        encode_dual(scale_quad * x_f, scale_quad * x_g);
    const CVector y = propagate(channel_1, frame, noise_1);
    const DecoupledChannel decoupled = decouple_matrix(channel_1);
    const RVector yd = decouple_vector(y);
    const DualCombiner combiner = mmse_dual(decoupled, sigma2);
    const auto [z_f, z_g] = combine_dual(combiner, yd);

    double sum_f = 0.0, sum_g = 0.0;
    const StreamEstimate est_f =
        score_stream(cfg.stream_f, d_f, z_f, scale_quad, cfg.n_dev, &sum_f);
    const StreamEstimate est_g =
        score_stream(*cfg.stream_g, d_g, z_g, scale_quad, cfg.n_dev, &sum_g);

    TrialRecord record;
    record.scheme = Scheme::Quadrature;
    record.snr_db = snr_db;
    record.snr_index = snr_index;
    record.trial_index = trial_index;
    record.f_true = est_f.truth;
    record.f_est = est_f.est;
    record.nmse_f = est_f.nmse;
    record.g_true = est_g.truth;
    record.g_est = est_g.est;
    record.nmse_g = est_g.nmse;
    result.quadrature = record;

    if (trace != nullptr) {
      trace->has_quadrature = true;
      trace->y_quad = y;
      trace->yd = yd;
      trace->u_f = combiner.u_f;
      trace->u_g = combiner.u_g;
      trace->z_f = z_f;
      trace->z_g = z_g;
      trace->sum_f = sum_f;
      trace->sum_g = sum_g;
    }
  }

  if (cfg.wants_conventional()) {
    // One transmission per function, each at unit stream power.
    const CVector y_f = propagate(channel_1, encode_single(x_f), noise_1);
    const ConventionalCombiner comb_f = mmse_conventional(channel_1, sigma2);
    const double z_f = combine_conventional(comb_f, y_f);
    double sum_f = 0.0;
    const StreamEstimate est_f =
        score_stream(cfg.stream_f, d_f, z_f, 1.0, cfg.n_dev, &sum_f);

    TrialRecord record;
    record.scheme = Scheme::Conventional;
    record.snr_db = snr_db;
    record.snr_index = snr_index;
    record.trial_index = trial_index;
    record.f_true = est_f.truth;
    record.f_est = est_f.est;
    record.nmse_f = est_f.nmse;

    if (trace != nullptr) {
      trace->has_conventional = true;
      trace->y_conv_f = y_f;
      trace->u_conv_f = comb_f.u;
      trace->zc_f = z_f;
      trace->sumc_f = sum_f;
    }

    if (has_g) {
      const CVector y_g = propagate(channel_2, encode_single(x_g), noise_2);
      const ConventionalCombiner comb_g = mmse_conventional(channel_2, sigma2);
      const double z_g = combine_conventional(comb_g, y_g);
      double sum_g = 0.0;
      const StreamEstimate est_g =
          score_stream(*cfg.stream_g, d_g, z_g, 1.0, cfg.n_dev, &sum_g);
      record.g_true = est_g.truth;
      record.g_est = est_g.est;
      record.nmse_g = est_g.nmse;

      if (trace != nullptr) {
        trace->y_conv_g = y_g;
        trace->u_conv_g = comb_g.u;
        trace->zc_g = z_g;
        trace->sumc_g = sum_g;
      }
    }
    result.conventional = record;
  }

  return result;
}

std::vector<TrialRecord> run_experiment(const SimConfig& cfg, int n_threads) {
  validate(cfg);

  const std::size_t n_snr = cfg.snr_db.size();
  const std::size_t n_jobs = n_snr * static_cast<std::size_t>(cfg.n_trials);
  std::vector<TrialResult> slots(n_jobs);

  unsigned workers = n_threads > 0
                         ? static_cast<unsigned>(n_threads)
                         : std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(
      std::min<std::size_t>(workers, std::max<std::size_t>(n_jobs, 1)));

  std::atomic<std::size_t> next{0};
  std::exception_ptr first_error;
  std::mutex error_mutex;

  auto worker = [&]() {
    for (;;) {
      const std::size_t idx = next.fetch_add(1, std::memory_order_relaxed);
      if (idx >= n_jobs) return;
      try {
        const int snr_index = static_cast<int>(idx / cfg.n_trials);
        const int trial_index = static_cast<int>(idx % cfg.n_trials);
        slots[idx] = run_trial(cfg, snr_index, trial_index);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
        next.store(n_jobs, std::memory_order_relaxed);  // drain remaining work
        return;
      }
    }
  };

  if (workers <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned i = 0; i < workers; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (first_error) std::rethrow_exception(first_error);

  std::vector<TrialRecord> records;
  records.reserve(n_jobs * 2);
  for (const TrialResult& slot : slots) {
    if (slot.conventional) records.push_back(*slot.conventional);
    if (slot.quadrature) records.push_back(*slot.quadrature);
  }
  return records;
}

CdfResult aggregate_cdf(const std::vector<TrialRecord>& records,
                        const SimConfig& cfg) {
  if (records.empty()) {
    throw EmptyGroup("no trial records to aggregate");
  }
  CdfResult result;
  auto build_series = [&](Scheme scheme, char stream) {
    const StreamSpec& spec =
        stream == 'f' ? cfg.stream_f : cfg.stream_g.value();
    CdfSeries series;
    series.scheme = scheme;
    series.stream = stream;
    series.function = spec.kind.name();
    for (const TrialRecord& rec : records) {
      if (rec.scheme != scheme) continue;
      if (stream == 'f') {
        series.nmse.push_back(rec.nmse_f);
      } else if (rec.nmse_g) {
        series.nmse.push_back(*rec.nmse_g);
      }
    }
    if (series.nmse.empty()) {
      throw EmptyGroup("no records for scheme " + scheme_name(scheme) +
                       " stream " + std::string(1, stream));
    }
    std::sort(series.nmse.begin(), series.nmse.end());
    const double n = static_cast<double>(series.nmse.size());
    series.level.resize(series.nmse.size());
    for (std::size_t i = 0; i < series.nmse.size(); ++i) {
      series.level[i] = static_cast<double>(i + 1) / n;
    }
    result.series.push_back(std::move(series));
  };

  if (cfg.wants_conventional()) {
    build_series(Scheme::Conventional, 'f');
    if (cfg.stream_g) build_series(Scheme::Conventional, 'g');
  }
  if (cfg.wants_quadrature()) {
    build_series(Scheme::Quadrature, 'f');
    if (cfg.stream_g) build_series(Scheme::Quadrature, 'g');
  }
  return result;
}

SweepResult aggregate_sweep(const std::vector<TrialRecord>& records,
                            const SimConfig& cfg) {
  if (records.empty()) {
    throw EmptyGroup("no trial records to aggregate");
  }
  const bool expect_pair = cfg.stream_g.has_value();
  SweepResult result;

  auto build_series = [&](Scheme scheme) {
    SweepSeries series;
    series.scheme = scheme;
    for (std::size_t i = 0; i < cfg.snr_db.size(); ++i) {
      double sum = 0.0, sum_sq = 0.0;
      long n = 0;
      for (const TrialRecord& rec : records) {
        if (rec.scheme != scheme ||
            rec.snr_index != static_cast<int>(i)) {
          continue;
        }
        const double nmse = per_computation_nmse(rec, expect_pair);
        sum += nmse;
        sum_sq += nmse * nmse;
        ++n;
      }
      if (n == 0) {
        throw EmptyGroup("no records for scheme " + scheme_name(scheme) +
                         " at snr index " + std::to_string(i));
      }
      SweepPoint point;
      point.snr_db = cfg.snr_db[i];
      point.n_trials = n;
      point.mean_nmse = sum / static_cast<double>(n);
      point.mean_nmse_db = 10.0 * std::log10(point.mean_nmse);
      const double variance =
          n > 1 ? std::max(0.0, (sum_sq - sum * sum / static_cast<double>(n)) /
                                    static_cast<double>(n - 1))
                : 0.0;
      point.stderr_nmse = std::sqrt(variance / static_cast<double>(n));
      series.points.push_back(point);
    }
    result.series.push_back(std::move(series));
  };

  if (cfg.wants_conventional()) build_series(Scheme::Conventional);
  if (cfg.wants_quadrature()) build_series(Scheme::Quadrature);
  return result;
}

}  // namespace qotac
