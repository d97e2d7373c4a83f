// Copyright 2026 The torwalk Authors
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


// Serial against parallel kernels, and kernels against the reference
// implementations they are tested against.

#include <benchmark/benchmark.h>

#include "../tests/oracles.hpp"
#include "torwalk/discrepancy.hpp"
#include "torwalk/fourier.hpp"
#include "torwalk/generators.hpp"
#include "torwalk/theorem_bounds.hpp"
#include "torwalk/walk.hpp"

namespace {

using torwalk::Execution;

Execution exec_of(const benchmark::State& state) {
  return state.range(0) ? Execution::parallel : Execution::serial;
}

torwalk::GeneratorMatrix family(const char* name, int n, int d) {
  return torwalk::builtin_generators(torwalk::parse_family(name), n, d);
}

void BM_WalkConvolution(benchmark::State& state) {
  const int n = static_cast<int>(state.range(1));
  const int k = n == 1 ? 2000 : 60;
  auto g = family("sqrt_primes", n, 1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(torwalk::exact_walk_distribution(g, k, exec_of(state)));
  }
}
BENCHMARK(BM_WalkConvolution)->ArgsProduct({{0, 1}, {1, 2}})->Unit(benchmark::kMillisecond);

void BM_WalkReference(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const int k = n == 1 ? 2000 : 60;
  for (auto _ : state) benchmark::DoNotOptimize(torwalk::reference::walk_distribution(n, k));
}
BENCHMARK(BM_WalkReference)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

void BM_MonteCarlo(benchmark::State& state) {
  auto g = family("sqrt_primes", 2, 2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(torwalk::simulate_walk(g, 200, 100000, 1, exec_of(state)));
  }
}
BENCHMARK(BM_MonteCarlo)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_DiscrepancyExact(benchmark::State& state) {
  const int d = static_cast<int>(state.range(1));
  auto p = torwalk::testing::random_point_set(d, d == 1 ? 20000 : 200, 1);
  for (auto _ : state) benchmark::DoNotOptimize(torwalk::discrepancy_exact(p, exec_of(state)));
}
BENCHMARK(BM_DiscrepancyExact)->ArgsProduct({{0, 1}, {1, 2}})->Unit(benchmark::kMillisecond);

void BM_DiscrepancyReference(benchmark::State& state) {
  auto p = torwalk::testing::random_point_set(2, 40, 1);
  for (auto _ : state) benchmark::DoNotOptimize(torwalk::reference::discrepancy_exact(p));
}
BENCHMARK(BM_DiscrepancyReference)->Unit(benchmark::kMillisecond);

void BM_DiscrepancyExactSmall(benchmark::State& state) {
  auto p = torwalk::testing::random_point_set(2, 40, 1);
  for (auto _ : state) benchmark::DoNotOptimize(torwalk::discrepancy_exact(p, Execution::serial));
}
BENCHMARK(BM_DiscrepancyExactSmall)->Unit(benchmark::kMillisecond);

void BM_DiscrepancyGrid(benchmark::State& state) {
  auto p = torwalk::testing::random_point_set(2, 5000, 1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(torwalk::discrepancy_grid(p, 512, exec_of(state)));
  }
}
BENCHMARK(BM_DiscrepancyGrid)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_Etk(benchmark::State& state) {
  auto g = family("sqrt_primes", 2, 2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(torwalk::etk_upper_bound(g, 1000, 200, exec_of(state)));
  }
}
BENCHMARK(BM_Etk)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_EtkReference(benchmark::State& state) {
  auto g = family("sqrt_primes", 2, 2);
  for (auto _ : state) benchmark::DoNotOptimize(torwalk::reference::etk_upper_bound(g, 1000, 200));
}
BENCHMARK(BM_EtkReference)->Unit(benchmark::kMillisecond);

void BM_CohortSum(benchmark::State& state) {
  auto g = family("sqrt_primes", 2, 2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(torwalk::cohort_sum_S(g, 1000, 200, exec_of(state)));
  }
}
BENCHMARK(BM_CohortSum)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
