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

#include <doctest.h>

#include <cmath>

#include "cheaptalk/mc.hpp"
#include "cheaptalk/mechanism.hpp"
#include "cheaptalk/parallel.hpp"
#include "oracle.hpp"

using cheaptalk::GameSpec;
using cheaptalk::Scenario;
using cheaptalk::ScenarioParams;
using cheaptalk::SimConfig;

namespace {

ScenarioParams play(int n, double x, int cutoff) {
  ScenarioParams p;
  p.n = n;
  p.strategy = cheaptalk::SenderStrategy::on_high(x);
  p.cutoff = cutoff;
  return p;
}

bool same(const cheaptalk::Estimate& a, const cheaptalk::Estimate& b) {
  return a.value == b.value && a.stderr_ == b.stderr_ && a.samples == b.samples;
}

}  // namespace

TEST_CASE("results do not depend on the thread count") {
  const GameSpec spec = GameSpec::illustrative(2.0, 0.1);
  SimConfig cfg;
  cfg.trials = 50000;
  cfg.seed = 7;
  const int saved = cheaptalk::max_threads();
  cheaptalk::set_max_threads(1);
  const auto a = cheaptalk::simulate(spec, play(30, 0.2, 3), cfg);
  cheaptalk::set_max_threads(3);
  const auto b = cheaptalk::simulate(spec, play(30, 0.2, 3), cfg);
  cheaptalk::set_max_threads(saved);
  CHECK(a.state_counts == b.state_counts);
  for (int i = 0; i < 3; ++i) {
    CHECK(same(a.proposal[i], b.proposal[i]));
    CHECK(same(a.pivot[i], b.pivot[i]));
  }
  CHECK(same(a.sender_welfare, b.sender_welfare));
  cfg.seed = 8;
  const auto c = cheaptalk::simulate(spec, play(30, 0.2, 3), cfg);
  CHECK(c.state_counts != a.state_counts);
}

TEST_CASE("estimates agree with analytic probabilities") {
  const GameSpec spec = GameSpec::illustrative(2.0, 0.1);
  SimConfig cfg;
  cfg.trials = 200000;
  cfg.seed = 11;
  const int n = 20, cutoff = 4;
  const double x = 0.5;
  const auto r = cheaptalk::simulate(spec, play(n, x, cutoff), cfg);
  std::uint64_t total = 0;
  for (auto c : r.state_counts) total += c;
  CHECK(total == cfg.trials);
  for (int i = 0; i < 3; ++i) {
    CHECK(r.proposal[i].z(oracle::p_proposal(spec, i, x, n, cutoff)) < 4.5);
    CHECK(r.pivot[i].z(oracle::binom_pmf(n - 1, cutoff - 1, spec.rho[i] * x)) < 4.5);
    for (int t : {0, 3, 10}) {
      CHECK(r.tally_pmf[i][t].z(oracle::binom_pmf(n, t, spec.rho[i] * x)) < 4.5);
    }
  }
  const auto w = oracle::welfare(spec, x, n, cutoff);
  CHECK(r.sender_welfare.z(w.sender) < 4.5);
  CHECK(r.receiver_welfare.z(w.receiver) < 4.5);
}

TEST_CASE("standard error halves with four times the trials") {
  const GameSpec spec = GameSpec::illustrative(2.0, 0.1);
  SimConfig cfg;
  cfg.seed = 3;
  cfg.trials = 40000;
  const auto small = cheaptalk::simulate(spec, play(20, 0.5, 4), cfg);
  cfg.trials = 160000;
  const auto large = cheaptalk::simulate(spec, play(20, 0.5, 4), cfg);
  CHECK(large.sender_welfare.stderr_ / small.sender_welfare.stderr_ ==
        doctest::Approx(0.5).epsilon(0.05));
  CHECK(large.proposal[2].stderr_ / small.proposal[2].stderr_ ==
        doctest::Approx(0.5).epsilon(0.05));
}

TEST_CASE("randomized mechanism outcomes mix the two cutoffs") {
  const GameSpec spec = GameSpec::illustrative(2.0, 0.1);
  const auto b = cheaptalk::build_randomized_mechanism(spec, 250);
  ScenarioParams p;
  p.n = 250;
  p.mechanism = b.mechanism;
  SimConfig cfg;
  cfg.trials = 200000;
  cfg.seed = 5;
  cfg.scenario = Scenario::randomized_mechanism;
  const auto r = cheaptalk::simulate(spec, p, cfg);
  for (int i = 0; i < 3; ++i) CHECK(r.proposal[i].z(b.p_proposal[i]) < 4.5);
}

TEST_CASE("scenario names round-trip") {
  for (Scenario s : {Scenario::equilibrium_play, Scenario::cutoff_mechanism,
                     Scenario::randomized_mechanism, Scenario::message_model_play}) {
    CHECK(cheaptalk::parse_scenario(cheaptalk::to_string(s)) == s);
  }
  CHECK_THROWS(cheaptalk::parse_scenario("nonsense"));
}

TEST_CASE("z-score uses the reference spread for unobserved events") {
  cheaptalk::Estimate e{0.0, 0.0, 1000000};
  CHECK(std::isfinite(e.z(1e-6)));
  CHECK(e.agrees(1e-6));
  CHECK_FALSE(e.agrees(0.01));
}
