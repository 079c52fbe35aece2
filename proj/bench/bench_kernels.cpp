// Copyright 2026 The bblab Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


// Serial reference vs OpenMP variants of the data-parallel kernels.

#include <benchmark/benchmark.h>

#include "bblab/bb_core.hpp"
#include "bblab/enumerate.hpp"
#include "bblab/instances.hpp"

namespace {

using bblab::Execution;

Execution ModeOf(const benchmark::State& state) {
  return state.range(1) == 0 ? Execution::kSerial : Execution::kParallel;
}

void BM_ZeroOneMasks(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const bblab::Polytope p = bblab::GenPackingFamily({n, 3, false, false});
  for (auto _ : state) benchmark::DoNotOptimize(bblab::ZeroOneMasks(p, {}, ModeOf(state)));
}
BENCHMARK(BM_ZeroOneMasks)->ArgsProduct({{12, 14}, {0, 1}})->Unit(benchmark::kMillisecond);

void BM_ProvesInfeasibility(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const bblab::Polytope p = bblab::GenCrossPolytope({n, false});
  const bblab::BBTree tree = bblab::FullVariableTree(n, n);
  for (auto _ : state) benchmark::DoNotOptimize(bblab::ProvesInfeasibility(tree, p, ModeOf(state)));
}
BENCHMARK(BM_ProvesInfeasibility)->ArgsProduct({{5, 7}, {0, 1}})->Unit(benchmark::kMillisecond);

void BM_HalfPointsFeasible(benchmark::State& state) {
  const bblab::Polytope p = bblab::GenPerturbedCross({12, 1});
  for (auto _ : state) benchmark::DoNotOptimize(bblab::HalfPointsFeasible(p, 5, ModeOf(state)));
}
BENCHMARK(BM_HalfPointsFeasible)->ArgsProduct({{12}, {0, 1}})->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
