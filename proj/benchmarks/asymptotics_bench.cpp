#include <benchmark/benchmark.h>

#include "dbd/asymptotics.hpp"

namespace {

void BM_SolveSingularity(benchmark::State& state) {
  dbd::Signature sig = dbd::Signature::standard();
  for (auto _ : state) benchmark::DoNotOptimize(dbd::solve_singularity(sig, dbd::kDefaultTolerance, state.range(0) != 0));
}
BENCHMARK(BM_SolveSingularity)->Arg(0)->Arg(1);

}  // namespace
