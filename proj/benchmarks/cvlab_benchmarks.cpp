#include <benchmark/benchmark.h>

#include "cvlab/analysis.hpp"
#include "cvlab/exact.hpp"
#include "cvlab/log_space.hpp"
#include "cvlab/oracle.hpp"
#include "cvlab/sim.hpp"

namespace {

void BM_LogSpaceCovariance(benchmark::State& state) {
  const std::int64_t n = state.range(0);
  for (auto _ : state) benchmark::DoNotOptimize(cvlab::fold_covariance_log(n, n / 10));
  state.SetComplexityN(n);
}
BENCHMARK(BM_LogSpaceCovariance)->RangeMultiplier(10)->Range(1000, 10'000'000)->Complexity();

void BM_RationalCovariance(benchmark::State& state) {
  const std::int64_t n = state.range(0);
  for (auto _ : state) benchmark::DoNotOptimize(cvlab::fold_covariance_rational(n, n / 4));
}
BENCHMARK(BM_RationalCovariance)->Arg(256)->Arg(1024)->Arg(4096)->Unit(benchmark::kMillisecond);

void BM_LogBinomial(benchmark::State& state) {
  const auto r = static_cast<std::uint64_t>(state.range(0));
  std::int64_t t = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(cvlab::log_binomial(r, t));
    t = (t + 7919) % static_cast<std::int64_t>(r);
  }
}
BENCHMARK(BM_LogBinomial)->Arg(1000)->Arg(10'000'000);

void BM_BitstringOracle(benchmark::State& state) {
  const cvlab::FoldScheme scheme(state.range(0), 2);
  for (auto _ : state) benchmark::DoNotOptimize(cvlab::bitstring_cv_oracle(scheme, cvlab::AlgorithmSpec::majority()));
}
BENCHMARK(BM_BitstringOracle)->DenseRange(12, 20, 4)->Unit(benchmark::kMillisecond);

void BM_CountOracle(benchmark::State& state) {
  const cvlab::FoldScheme scheme(state.range(0), 4);
  for (auto _ : state) benchmark::DoNotOptimize(cvlab::count_cv_oracle(scheme));
}
BENCHMARK(BM_CountOracle)->Arg(64)->Arg(256)->Unit(benchmark::kMillisecond);

void BM_SimulateMajority(benchmark::State& state) {
  const auto trials = state.range(0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        cvlab::run_cv_mse(cvlab::DataSpec::point_mass(120), cvlab::AlgorithmSpec::majority(), 10, trials, 1));
  }
  state.SetItemsProcessed(state.iterations() * trials);
}
BENCHMARK(BM_SimulateMajority)->Arg(10'000)->Unit(benchmark::kMillisecond);

void BM_Sweep(benchmark::State& state) {
  const std::int64_t n = state.range(0);
  for (auto _ : state) benchmark::DoNotOptimize(cvlab::sweep(n, cvlab::default_mode(n)));
}
BENCHMARK(BM_Sweep)->Arg(720)->Arg(10'080)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
