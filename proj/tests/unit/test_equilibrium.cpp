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

#include "cheaptalk/equilibrium.hpp"
#include "cheaptalk/model.hpp"
#include "oracle.hpp"

using cheaptalk::GameSpec;

namespace {

void check_against_grid(const GameSpec& spec, int n) {
  const auto set = cheaptalk::solve(spec, n);
  const auto roots = oracle::grid_equilibria(spec, n, 20000);
  CAPTURE(n);
  REQUIRE(set.equilibria.size() == roots.size());
  for (std::size_t k = 0; k < roots.size(); ++k) {
    const auto& eq = set.equilibria[k];
    CHECK(eq.cutoff == roots[k].cutoff);
    CHECK(eq.x == doctest::Approx(roots[k].x).epsilon(1e-8));
  }
}

}  // namespace

TEST_CASE("solve agrees with a dense grid scan") {
  check_against_grid(GameSpec::illustrative(2.0, 0.1), 50);
  check_against_grid(GameSpec::illustrative(1.2, 0.05), 30);
  check_against_grid(GameSpec::illustrative(1.0, 0.2), 12);
  check_against_grid(GameSpec::illustrative(8.0, 0.0), 10);
}

TEST_CASE("equilibria are ordered by x and satisfy both indifference conditions") {
  const GameSpec spec = GameSpec::illustrative(2.0, 0.1);
  const auto set = cheaptalk::solve(spec, 50);
  REQUIRE_FALSE(set.babbling_only());
  for (std::size_t k = 0; k < set.equilibria.size(); ++k) {
    const auto& eq = set.equilibria[k];
    if (k > 0) CHECK(eq.x >= set.equilibria[k - 1].x);
    CHECK(eq.log_ls_low < 0.0);
    if (!eq.corner) CHECK(std::abs(eq.log_ls_high) < 1e-8);
    CHECK(eq.cutoff == oracle::receiver_cutoff(spec, eq.x, 50));
  }
  REQUIRE(set.max() != nullptr);
  CHECK(set.max()->x == set.equilibria.back().x);
}

TEST_CASE("welfare matches direct outcome probabilities") {
  const GameSpec spec = GameSpec::illustrative(2.0, 0.1);
  for (double x : {0.1, 0.7}) {
    for (int cutoff : {0, 3, 20, 41}) {
      const auto w = cheaptalk::welfare(spec, cheaptalk::SenderStrategy::on_high(x), 40, cutoff);
      const auto o = oracle::welfare(spec, x, 40, cutoff);
      CHECK(w.sender == doctest::Approx(o.sender).epsilon(1e-12));
      CHECK(w.receiver == doctest::Approx(o.receiver).epsilon(1e-12));
    }
  }
}

TEST_CASE("babbling and full-information benchmarks") {
  const GameSpec spec = GameSpec::illustrative(2.0, 0.1);
  double prior_gain = 0.0, full = 0.0;
  for (int i = 0; i < 3; ++i) {
    prior_gain += spec.prior[i] * spec.u_receiver[i];
    full += spec.prior[i] * std::max(0.0, spec.u_receiver[i]);
  }
  const auto b = cheaptalk::babbling_welfare(spec);
  CHECK(b.receiver == doctest::Approx(std::max(0.0, prior_gain)));
  CHECK(cheaptalk::full_information_receiver_welfare(spec) == doctest::Approx(full));
}

TEST_CASE("equilibrium cutoff maximizes sender welfare and welfare rises with x") {
  const GameSpec spec = GameSpec::illustrative(1.2, 0.05);
  const auto set = cheaptalk::solve(spec, 60);
  REQUIRE_FALSE(set.babbling_only());
  for (const auto& eq : set.equilibria) {
    const auto opt = cheaptalk::cutoff_maximizes_sender_welfare(spec, eq);
    CHECK(opt.holds);
    for (int c = 0; c <= 61; ++c) {
      CHECK(oracle::welfare(spec, eq.x, 60, c).sender <=
            oracle::welfare(spec, eq.x, 60, eq.cutoff).sender + 1e-12);
    }
  }
  const auto rows = cheaptalk::pareto_order(set);
  CHECK(rows.size() == set.equilibria.size() + 1);
}

TEST_CASE("no equilibrium mixes on the low signal for small committees") {
  for (double t : {1.0, 2.0, 3.5}) {
    const GameSpec spec = GameSpec::illustrative(t, 0.1);
    for (int n = 1; n <= 5; ++n) {
      CHECK_FALSE(cheaptalk::find_mixed_low_signal_equilibrium(spec, n, 120).has_value());
    }
  }
}

TEST_CASE("solver rejects invalid input") {
  GameSpec bad = GameSpec::illustrative(2.0, 0.1);
  bad.prior = {0.5, 0.5, 0.5};
  CHECK_THROWS_AS(cheaptalk::solve(bad, 10), cheaptalk::InvalidSpec);
  CHECK_THROWS(cheaptalk::solve(GameSpec::illustrative(2.0, 0.1), 0));
}

TEST_CASE("single sender with common interest reports truthfully") {
  // Receiver payoffs (-2, 4) halved: same decisions, and U_R >= U_S holds.
  GameSpec spec = GameSpec::illustrative(2.0, 0.0);
  spec.prior = {0.5, 0.0, 0.5};
  spec.u_senders = {-1.0, -1.0, 1.0};
  spec.u_receiver = {-1.0, 1.0, 2.0};
  const auto set = cheaptalk::solve(spec, 1);
  REQUIRE(set.equilibria.size() == 1);
  CHECK(set.equilibria[0].x == 1.0);
  CHECK(set.equilibria[0].cutoff == 1);
}
