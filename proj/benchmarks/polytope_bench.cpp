#include <boxlogic/polytope.hpp>

#include <benchmark/benchmark.h>

using namespace boxlogic;

static void BM_EnumerateVertices(benchmark::State& state) {
  const auto spec = state.range(0) == 0 ? BoxWorldSpec::from_sizes({2, 2}, {2, 2})
                                        : BoxWorldSpec::from_sizes({2, 2, 2}, {2, 2, 2});
  const HRepresentation h = ns_polytope(spec);
  std::size_t count = 0;
  for (auto _ : state) {
    const auto v = enumerate_vertices(h);
    count = v.vertices.size();
    benchmark::DoNotOptimize(count);
  }
  state.counters["vertices"] = static_cast<double>(count);
}
BENCHMARK(BM_EnumerateVertices)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
