#include <boxlogic/logic.hpp>

#include <benchmark/benchmark.h>

using namespace boxlogic;

static void BM_CloseLogic(benchmark::State& state) {
  const std::size_t outcomes = static_cast<std::size_t>(state.range(0));
  const auto spec = BoxWorldSpec::from_sizes({outcomes, outcomes}, {outcomes, outcomes});
  std::size_t size = 0;
  for (auto _ : state) {
    const Logic logic = close_logic(spec);
    size = logic.size();
    benchmark::DoNotOptimize(size);
  }
  state.counters["elements"] = static_cast<double>(size);
}
BENCHMARK(BM_CloseLogic)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

static void BM_VerifyAxioms(benchmark::State& state) {
  const Logic logic = close_logic(BoxWorldSpec::from_sizes({2, 2, 2}, {2, 2, 2}));
  for (auto _ : state) benchmark::DoNotOptimize(verify_axioms(logic));
}
BENCHMARK(BM_VerifyAxioms)->Unit(benchmark::kMillisecond);

static void BM_CountDecompositions(benchmark::State& state) {
  const Logic logic = close_logic(BoxWorldSpec::from_sizes({3, 3}, {3, 3}));
  for (auto _ : state) benchmark::DoNotOptimize(count_decompositions(logic));
}
BENCHMARK(BM_CountDecompositions)->Unit(benchmark::kMillisecond);
