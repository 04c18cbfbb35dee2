// Copyright 2026 The qdemon Authors
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

#include <array>

#include "benchmark/benchmark.h"
#include "qdemon/batch.hpp"
#include "qdemon/estimators.hpp"
#include "qdemon/sme.hpp"

namespace {

using namespace qdemon;

void BM_KrausStep(benchmark::State& state) {
  const SimParams p;
  BlochState s{0.3, 0.0, 0.5};
  const std::array<ChannelRecord, 1> obs{{{p.k_observed(), 0.7}}};
  for (auto _ : state) {
    s = kraus_step(s, obs, p.k_hidden(), p, p.dt).state;
    benchmark::DoNotOptimize(s);
  }
}
BENCHMARK(BM_KrausStep);

void BM_EulerStep(benchmark::State& state) {
  const SimParams p;
  BlochState s{0.3, 0.0, 0.5};
  for (auto _ : state) {
    s = filter_step(s, 0.01, p.k_observed(), p, p.dt).state;
    benchmark::DoNotOptimize(s);
  }
}
BENCHMARK(BM_EulerStep);

void BM_Segment(benchmark::State& state) {
  SimParams p;
  p.mode = state.range(0) == 0 ? SegmentMode::hierarchy : SegmentMode::filter_only;
  const BlochState prior = thermal_state(p.beta);
  std::uint64_t i = 0;
  for (auto _ : state) {
    WienerSource noise(p.seed, i++);
    benchmark::DoNotOptimize(run_monitored_segment(p, BlochState{0, 0, 1}, prior, noise));
  }
  state.SetLabel(p.mode == SegmentMode::hierarchy ? "hierarchy" : "filter-only");
}
BENCHMARK(BM_Segment)->Arg(0)->Arg(1)->Unit(benchmark::kMicrosecond);

void BM_Protocol(benchmark::State& state) {
  const SimParams p;
  std::uint64_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(run_protocol(p, i++));
}
BENCHMARK(BM_Protocol)->Unit(benchmark::kMicrosecond);

void BM_Bootstrap(benchmark::State& state) {
  std::vector<double> v(static_cast<std::size_t>(state.range(0)));
  Rng src(1);
  for (double& x : v) x = src.normal();
  for (auto _ : state) {
    Rng rng(2);
    benchmark::DoNotOptimize(bootstrap_se(v, 200, rng));
  }
}
BENCHMARK(BM_Bootstrap)->Arg(400)->Arg(20000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
