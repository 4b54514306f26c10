#include <benchmark/benchmark.h>

#include "medalg/harness.hpp"
#include "medalg/roller.hpp"
#include "medalg/topology.hpp"
#include "medalg/uniformity.hpp"
#include "medalg/walls.hpp"

using namespace medalg;

namespace {

FiniteMedianAlgebra bench_algebra(int dim) {
  // A mid-size closure in a product of chains; fresh instance per call so
  // the per-algebra caches do not leak across iterations.
  CorpusSpec spec;
  spec.instance_cap = 4096;
  FiniteMedianAlgebra ambient = make_hypercube(dim);
  return random_subalgebra(spec, ambient, 5, 99);
}

void BM_MedianClosure(benchmark::State& state) {
  FiniteMedianAlgebra ambient = make_hypercube(int(state.range(0)));
  CorpusSpec spec;
  spec.instance_cap = 4096;
  std::uint64_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(random_subalgebra(spec, ambient, 5, i++));
  }
}
BENCHMARK(BM_MedianClosure)->Arg(5)->Arg(7);

void BM_WallEnumeration(benchmark::State& state) {
  for (auto _ : state) {
    state.PauseTiming();
    FiniteMedianAlgebra a = bench_algebra(int(state.range(0)));
    state.ResumeTiming();
    benchmark::DoNotOptimize(walls(a).count());
  }
}
BENCHMARK(BM_WallEnumeration)->Arg(5)->Arg(6);

void BM_Rank(benchmark::State& state) {
  FiniteMedianAlgebra cube = make_hypercube(int(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(rank(cube));
}
BENCHMARK(BM_Rank)->Arg(4)->Arg(5);

void BM_TotalWedge(benchmark::State& state) {
  for (auto _ : state) {
    state.PauseTiming();
    FiniteMedianAlgebra a = bench_algebra(5);
    state.ResumeTiming();
    benchmark::DoNotOptimize(chain_subbase(a).total_wedge().members().size());
  }
}
BENCHMARK(BM_TotalWedge);

void BM_Orientations(benchmark::State& state) {
  for (auto _ : state) {
    state.PauseTiming();
    FiniteMedianAlgebra a = bench_algebra(5);
    state.ResumeTiming();
    benchmark::DoNotOptimize(consistent_orientations(a).size());
  }
}
BENCHMARK(BM_Orientations);

void BM_TauM(benchmark::State& state) {
  for (auto _ : state) {
    state.PauseTiming();
    FiniteMedianAlgebra a = bench_algebra(5);
    state.ResumeTiming();
    benchmark::DoNotOptimize(tau_m(a).discrete());
  }
}
BENCHMARK(BM_TauM);

}  // namespace

BENCHMARK_MAIN();
