// Copyright 2026 The qmcdisc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Microbenchmarks for the hot paths: digit expansion, the pairwise L2 sum,
// batched local discrepancy and the per-block frequency expansion.

#include <cstdint>
#include <vector>

#include <benchmark/benchmark.h>

#include "qmcdisc/discrepancy.h"
#include "qmcdisc/fourier.h"
#include "qmcdisc/pointsets.h"
#include "qmcdisc/radix.h"

namespace qmcdisc {
namespace {

void BM_RadicalInverse(benchmark::State& state) {
  const int p = static_cast<int>(state.range(0));
  int64_t n = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(radical_inverse(n++, p));
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_RadicalInverse)->Arg(2)->Arg(3)->Arg(7);

void BM_HaltonGenerate(benchmark::State& state) {
  const BaseSystem s({2, 3, 5});
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(halton(s, 0, n));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_HaltonGenerate)->Arg(1 << 10)->Arg(1 << 14);

void BM_L2Exact(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const PointSet pts = halton(BaseSystem({2, 3}), 0, n);
  for (auto _ : state) {
    benchmark::DoNotOptimize(l2_exact(pts));
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_L2Exact)->RangeMultiplier(4)->Range(1 << 8, 1 << 12)
    ->Complexity(benchmark::oNSquared);

void BM_EvaluatorBatch(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  std::vector<int> bases{2, 3, 5, 7};
  bases.resize(static_cast<std::size_t>(d));
  const PointSet pts = halton(BaseSystem(bases), 0, 1 << 12);
  const LocalDiscrepancyEvaluator eval(pts);
  const std::vector<double> queries = uniform_queries(d, 0, 4096, 1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(eval.evaluate(queries));
  }
  state.SetItemsProcessed(state.iterations() * 4096);
}
BENCHMARK(BM_EvaluatorBatch)->DenseRange(1, 4);

void BM_BlockFourier(benchmark::State& state) {
  const BaseSystem s({2, 3});
  const std::vector<int> depths{static_cast<int>(state.range(0)), 3};
  const double x[] = {0.999, 0.99};  // nonzero top digits at every depth
  const FourierBlock fb = FourierBlock::make(s, 5, 1000, depths, x);
  for (auto _ : state) {
    benchmark::DoNotOptimize(block_fourier(fb));
  }
  state.counters["modulus"] = static_cast<double>(fb.mr.modulus);
}
BENCHMARK(BM_BlockFourier)->DenseRange(2, 8, 3);

void BM_BlockDirect(benchmark::State& state) {
  const BaseSystem s({2, 3});
  const std::vector<int> depths{8, 3};
  const double x[] = {0.999, 0.99};  // nonzero top digits at every depth
  const FourierBlock fb = FourierBlock::make(s, 5, 1000, depths, x);
  for (auto _ : state) {
    benchmark::DoNotOptimize(block_direct(fb));
  }
}
BENCHMARK(BM_BlockDirect);

}  // namespace
}  // namespace qmcdisc

BENCHMARK_MAIN();
