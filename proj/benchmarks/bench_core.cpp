#include <benchmark/benchmark.h>

#include "gsol/balance.hpp"
#include "gsol/curvature.hpp"
#include "gsol/pipeline.hpp"

using namespace gsol;

namespace {

// rho < L/2 takes the image sum, larger rho the Bessel series
void BM_PotentialJets(benchmark::State& state) {
  const PotentialSet p(RodDiagram::basic(static_cast<std::size_t>(state.range(0)), 1.0));
  const double rho = state.range(1) / 100.0;
  for (auto _ : state) benchmark::DoNotOptimize(p.jets(rho, 0.31));
}
BENCHMARK(BM_PotentialJets)->ArgsProduct({{2, 4}, {10, 150}});

void BM_Alpha(benchmark::State& state) {
  const SolitonSolution s(RodDiagram::basic(static_cast<std::size_t>(state.range(0)), 1.0));
  for (auto _ : state) benchmark::DoNotOptimize(s.alpha()(1.3, 0.41));
}
BENCHMARK(BM_Alpha)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_Balance(benchmark::State& state) {
  const SolitonSolution s(RodDiagram::equal_rods(3, 1.0, {0, 1, 0, 2}));
  for (auto _ : state) benchmark::DoNotOptimize(balance_constants(s));
}
BENCHMARK(BM_Balance)->Unit(benchmark::kMillisecond);

void BM_Ricci(benchmark::State& state) {
  const SolitonSolution s = balance(SolitonSolution(RodDiagram::basic(3, 3.0)));
  for (auto _ : state) benchmark::DoNotOptimize(ricci_residual(s, 1.1, 0.7, 1e-3));
}
BENCHMARK(BM_Ricci)->Unit(benchmark::kMicrosecond);

void BM_Verify(benchmark::State& state) {
  const RunConfig c = parse_config("n = 2\nperiod = 2\n[rod]\nfamily = 1\nfraction = 1/2\n[rod]\nfamily = 2\nfraction = 1/2\n");
  for (auto _ : state) {
    benchmark::DoNotOptimize(run_pipeline(c, Command::verify, {.threads = static_cast<int>(state.range(0))}));
  }
}
BENCHMARK(BM_Verify)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
