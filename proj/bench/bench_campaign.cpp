// Serial reference path against the OpenMP path, plus the two search kernels.
//
//   spectile_bench --benchmark_filter=Campaign

#include "spectile/verifier.hpp"

#include <benchmark/benchmark.h>

using namespace spectile;

namespace {

void BM_Campaign(benchmark::State& state) {
  CampaignConfig cfg;
  cfg.n = static_cast<Elem>(state.range(0));
  cfg.workers = static_cast<unsigned>(state.range(1));
  cfg.budget = 5'000'000;
  std::uint64_t nodes = 0;
  for (auto _ : state) {
    const auto rep = run_campaign(cfg);
    nodes = rep.summary.nodes;
    benchmark::DoNotOptimize(rep.summary.spectral);
  }
  state.counters["nodes"] = static_cast<double>(nodes);
  state.counters["nodes/s"] = benchmark::Counter(static_cast<double>(nodes), benchmark::Counter::kIsIterationInvariantRate);
}
BENCHMARK(BM_Campaign)
    ->ArgNames({"n", "workers"})
    ->Args({36, 1})
    ->Args({36, 4})
    ->Args({48, 1})
    ->Args({48, 4})
    ->Args({60, 1})
    ->Args({60, 4})
    ->Unit(benchmark::kMillisecond)
    ->UseRealTime();

void BM_Crosscheck(benchmark::State& state) {
  const std::vector<Elem> ns{24};
  const auto workers = static_cast<unsigned>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(crosscheck_small(ns, 20'000'000'000ULL, workers).ok);
}
BENCHMARK(BM_Crosscheck)->ArgName("workers")->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();

void BM_FindSpectrum(benchmark::State& state) {
  const auto s = CyclicMultiset::parse("n=60:0,1,5,6,12,13,17,18,24,25,29,30");
  for (auto _ : state) benchmark::DoNotOptimize(find_spectrum(s, 100'000'000).status);
}
BENCHMARK(BM_FindSpectrum);

void BM_FindComplement(benchmark::State& state) {
  const auto s = CyclicMultiset::parse("n=72:0,1,2,3,8,9,10,11");
  const bool prune = state.range(0) != 0;
  for (auto _ : state) benchmark::DoNotOptimize(find_tiling_complement(s, 100'000'000, prune).status);
}
BENCHMARK(BM_FindComplement)->ArgName("prune")->Arg(0)->Arg(1);

}  // namespace

BENCHMARK_MAIN();
