// Copyright 2026 The cheaptalk Authors
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

#include <benchmark/benchmark.h>

#include "cheaptalk/equilibrium.hpp"
#include "cheaptalk/largedev.hpp"
#include "cheaptalk/mc.hpp"
#include "cheaptalk/mechanism.hpp"
#include "cheaptalk/prob.hpp"

namespace {

using cheaptalk::GameSpec;

void BM_BinomialLogPmf(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  int k = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(cheaptalk::binomial_logpmf(n, k, 0.37));
    k = (k + 1) % (n + 1);
  }
}
BENCHMARK(BM_BinomialLogPmf)->Arg(50)->Arg(2000);

void BM_UpperTails(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(cheaptalk::binomial_log_upper_tails(n, 0.37));
}
BENCHMARK(BM_UpperTails)->Arg(200)->Arg(2000);

void BM_Solve(benchmark::State& state) {
  const GameSpec spec = GameSpec::illustrative(2.0, 0.1);
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(cheaptalk::solve(spec, n));
}
BENCHMARK(BM_Solve)->Arg(50)->Arg(200)->Arg(800)->Unit(benchmark::kMillisecond);

void BM_MechanismBuild(benchmark::State& state) {
  const GameSpec spec = GameSpec::illustrative(2.0, 0.1);
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(cheaptalk::build_randomized_mechanism(spec, n));
}
BENCHMARK(BM_MechanismBuild)->Arg(500)->Arg(2000)->Unit(benchmark::kMicrosecond);

void BM_PivotalSet(benchmark::State& state) {
  const GameSpec spec = GameSpec::illustrative(2.0, 0.1);
  const auto model = cheaptalk::default_message_model();
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(cheaptalk::pivotal_set(spec, model, n));
}
BENCHMARK(BM_PivotalSet)->Arg(50)->Arg(300)->Unit(benchmark::kMillisecond);

void BM_ChernoffPoint(benchmark::State& state) {
  const auto model = cheaptalk::default_message_model();
  for (auto _ : state) benchmark::DoNotOptimize(cheaptalk::chernoff_point(model.g[0], model.g[2]));
}
BENCHMARK(BM_ChernoffPoint);

void BM_Simulate(benchmark::State& state) {
  const GameSpec spec = GameSpec::illustrative(2.0, 0.1);
  cheaptalk::ScenarioParams p;
  p.n = 50;
  p.strategy = cheaptalk::SenderStrategy::on_high(0.12);
  p.cutoff = 3;
  cheaptalk::SimConfig cfg;
  cfg.trials = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(cheaptalk::simulate(spec, p, cfg));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Simulate)->Arg(100000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
