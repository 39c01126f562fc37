// Copyright 2026 The WarpWatch Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <random>
#include <vector>

#include <benchmark/benchmark.h>

#include "warpwatch/detector.hpp"
#include "warpwatch/dtw.hpp"
#include "warpwatch/synthetic.hpp"
#include "warpwatch/training.hpp"

namespace {

using namespace warpwatch;

std::vector<double> noise(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> d;
  std::vector<double> v(n);
  for (auto& x : v) x = d(rng);
  return v;
}

void BM_DtwFull(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto a = noise(n, 1), b = noise(n, 2);
  for (auto _ : state) benchmark::DoNotOptimize(dtw(a, b).distance);
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_DtwFull)->RangeMultiplier(2)->Range(64, 1024)->Complexity(benchmark::oNSquared);

void BM_DtwBand(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto a = noise(n, 1), b = noise(n, 2);
  const auto mask = ConstraintMask::band(n, n, 10);
  std::size_t cells = 0;
  for (auto _ : state) {
    const auto r = dtw(a, b, mask);
    cells = r.cells_evaluated;
    benchmark::DoNotOptimize(r.distance);
  }
  state.counters["cells"] = static_cast<double>(cells);
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_DtwBand)->RangeMultiplier(2)->Range(64, 4096)->Complexity(benchmark::oN);

void BM_EdtwaScore(benchmark::State& state) {
  SyntheticConfig c;
  c.n_normal = 41;
  c.n_anomalous = 0;
  c.length = static_cast<std::size_t>(state.range(0));
  const auto data = generate_synthetic(c);
  const std::vector<TimeSeries> training(data.begin(), data.end() - 1);
  const auto models = train({training, {}}, TrainingOptions{});
  for (auto _ : state) benchmark::DoNotOptimize(score_against(data.back(), models).score);
}
BENCHMARK(BM_EdtwaScore)->Arg(50)->Arg(100)->Arg(200)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
