#include <benchmark/benchmark.h>

#include <random>

#include "qroute/router.hpp"
#include "qroute/solvers.hpp"
#include "qroute/spanning_cover.hpp"
#include "qroute/verify.hpp"

using namespace qroute;

namespace {

// Deterministic instance at the full fault budget for the given shape.
Instance sample_instance(int n, int k, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  int f = max_fault_budget(n, k);
  VertexSet F;
  while (true) {
    F.clear();
    while (static_cast<int>(F.size()) < f)
      set_insert(F, static_cast<Vertex>(rng() % vertex_count(n)));
    if (is_conditionally_fault_free(n, F)) break;
  }
  std::vector<Vertex> even, odd;
  for (Vertex v = 0; v < vertex_count(n); ++v) {
    if (set_contains(F, v)) continue;
    (parity_class(v) == ParityClass::Even ? even : odd).push_back(v);
  }
  std::shuffle(even.begin(), even.end(), rng);
  std::shuffle(odd.begin(), odd.end(), rng);
  return Instance{n, k, F, make_set({even.begin(), even.begin() + k}),
                  make_set({odd.begin(), odd.begin() + k})};
}

void BM_route(benchmark::State& state) {
  int n = static_cast<int>(state.range(0));
  int k = static_cast<int>(state.range(1));
  Instance inst = sample_instance(n, k, 1234);
  SolverBudget budget;
  budget.max_dimension = 7;
  for (auto _ : state) {
    RouteResult res = route(inst, budget);
    benchmark::DoNotOptimize(res.paths.paths.data());
  }
}
BENCHMARK(BM_route)
    ->Args({5, 2})
    ->Args({6, 2})
    ->Args({6, 4})
    ->Args({7, 3})
    ->Args({7, 5})
    ->Unit(benchmark::kMicrosecond);

void BM_long_path(benchmark::State& state) {
  int n = static_cast<int>(state.range(0));
  Instance inst = sample_instance(n, 1, 99);
  for (auto _ : state) {
    Path p = long_path(n, inst.faults, inst.sources[0], inst.sinks[0]);
    benchmark::DoNotOptimize(p.vertices.data());
  }
}
BENCHMARK(BM_long_path)->Arg(5)->Arg(6)->Unit(benchmark::kMicrosecond);

void BM_spanning_cover(benchmark::State& state) {
  int n = static_cast<int>(state.range(0));
  std::vector<Vertex> even, odd;
  for (Vertex v = 2; v < vertex_count(n); ++v)
    (parity_class(v) == ParityClass::Even ? even : odd).push_back(v);
  VertexSet S = make_set({even[1], even[3]});
  VertexSet T = make_set({odd[1], odd[3]});
  for (auto _ : state) {
    PathSystem ps = spanning_disjoint_paths_avoiding_edge(n, 0, 1, S, T);
    benchmark::DoNotOptimize(ps.paths.data());
  }
}
BENCHMARK(BM_spanning_cover)->Arg(5)->Arg(6)->Unit(benchmark::kMicrosecond);

void BM_verify(benchmark::State& state) {
  Instance inst = sample_instance(7, 4, 7);
  SolverBudget budget;
  budget.max_dimension = 7;
  RouteResult res = route(inst, budget);
  for (auto _ : state) {
    VerifyReport rep = verify(inst, res.paths);
    benchmark::DoNotOptimize(rep.coverage);
  }
}
BENCHMARK(BM_verify)->Unit(benchmark::kMicrosecond);

} // namespace

BENCHMARK_MAIN();
