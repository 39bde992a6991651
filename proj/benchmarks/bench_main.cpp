// Microbenchmarks for the hot paths of the trial pipeline: combiner
// construction dominates, so the interesting sizes are the experiment
// defaults (N = K = 20) and a few neighbours.

#include <benchmark/benchmark.h>

#include "qotac/combiners.hpp"
#include "qotac/montecarlo.hpp"

namespace {

using namespace qotac;

ChannelMatrix bench_channel(int n, int k) {
  RandomStream rng(2024, 0, 0);
  return sample_channel(n, k, rng);
}

void BM_SampleChannel(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  RandomStream rng(7, 0, 0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(sample_channel(n, n, rng));
  }
}
BENCHMARK(BM_SampleChannel)->Arg(8)->Arg(20)->Arg(32);

void BM_DecoupleMatrix(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const ChannelMatrix h = bench_channel(n, n);
  for (auto _ : state) {
    benchmark::DoNotOptimize(decouple_matrix(h));
  }
}
BENCHMARK(BM_DecoupleMatrix)->Arg(8)->Arg(20)->Arg(32);

void BM_MmseConventional(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const ChannelMatrix h = bench_channel(n, n);
  for (auto _ : state) {
    benchmark::DoNotOptimize(mmse_conventional(h, 0.1));
  }
}
BENCHMARK(BM_MmseConventional)->Arg(8)->Arg(20)->Arg(32);

void BM_MmseDual(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const DecoupledChannel d = decouple_matrix(bench_channel(n, n));
  for (auto _ : state) {
    benchmark::DoNotOptimize(mmse_dual(d, 0.1));
  }
}
BENCHMARK(BM_MmseDual)->Arg(8)->Arg(20)->Arg(32);

SimConfig bench_config(Scheme scheme) {
  SimConfig cfg;
  cfg.n_rx = 20;
  cfg.n_dev = 20;
  cfg.snr_db = {15.0};
  cfg.n_trials = 1;
  cfg.seed = 42;
  cfg.scheme = scheme;
  cfg.stream_f = make_stream_spec(FunctionKind::sum(), {1.0, 2.0});
  cfg.stream_g = make_stream_spec(FunctionKind::sum(), {1.0, 2.0});
  return cfg;
}

void BM_TrialQuadrature(benchmark::State& state) {
  const SimConfig cfg = bench_config(Scheme::Quadrature);
  int trial = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(run_trial(cfg, 0, trial++ & 0xfff));
  }
}
BENCHMARK(BM_TrialQuadrature);

void BM_TrialBoth(benchmark::State& state) {
  const SimConfig cfg = bench_config(Scheme::Both);
  int trial = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(run_trial(cfg, 0, trial++ & 0xfff));
  }
}
BENCHMARK(BM_TrialBoth);

}  // namespace

BENCHMARK_MAIN();
