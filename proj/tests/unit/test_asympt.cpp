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
#include <vector>

#include "cheaptalk/asympt.hpp"
#include "cheaptalk/equilibrium.hpp"
#include "oracle.hpp"

using cheaptalk::CommonInterestRegime;
using cheaptalk::DisagreementRegime;
using cheaptalk::GameSpec;

TEST_CASE("regime thresholds at the baseline signal precisions") {
  const GameSpec spec = GameSpec::illustrative(2.0, 0.0);
  CHECK(cheaptalk::signal_swap_threshold(spec) == doctest::Approx(16.0));
  CHECK(cheaptalk::high_signal_threshold(spec) == doctest::Approx(4.0));
}

TEST_CASE("regime classification on the illustrative family") {
  CHECK(cheaptalk::classify_without_disagreement(GameSpec::illustrative(20.0, 0.0)) ==
        CommonInterestRegime::babbling_only);
  CHECK(cheaptalk::classify_without_disagreement(GameSpec::illustrative(8.0, 0.0)) ==
        CommonInterestRegime::aggregating);
  CHECK(cheaptalk::classify_without_disagreement(GameSpec::illustrative(16.0, 0.0)) ==
        CommonInterestRegime::knife_edge);
  CHECK(cheaptalk::classify_with_disagreement(GameSpec::illustrative(8.0, 0.01)) ==
        DisagreementRegime::fail);
  CHECK(cheaptalk::classify_with_disagreement(GameSpec::illustrative(2.0, 0.1)) ==
        DisagreementRegime::persist_candidate);
  CHECK(cheaptalk::classify_with_disagreement(GameSpec::illustrative(4.0, 0.1)) ==
        DisagreementRegime::boundary);
  CHECK_THROWS(cheaptalk::classify_without_disagreement(GameSpec::illustrative(8.0, 0.1)));
  CHECK_THROWS(cheaptalk::classify_with_disagreement(GameSpec::illustrative(8.0, 0.0)));
}

TEST_CASE("learning gap matches direct outcome probabilities") {
  const GameSpec spec = GameSpec::illustrative(2.0, 0.1);
  for (int cutoff : {0, 2, 9, 31}) {
    const double want = oracle::p_proposal(spec, 0, 0.4, 30, cutoff) +
                        1.0 - oracle::p_proposal(spec, 2, 0.4, 30, cutoff);
    CHECK(cheaptalk::learning_gap(spec, 0.4, 30, cutoff) == doctest::Approx(want).epsilon(1e-12));
  }
}

TEST_CASE("ladder points summarize the most informative equilibrium") {
  const GameSpec spec = GameSpec::illustrative(2.0, 0.1);
  const auto set = cheaptalk::solve(spec, 100);
  const auto p = cheaptalk::ladder_point(spec, set);
  REQUIRE_FALSE(p.babbling_only);
  CHECK(p.x_max == set.max()->x);
  CHECK(p.n_x_max == doctest::Approx(100 * p.x_max));
  CHECK(p.learning_gap == doctest::Approx(
                              cheaptalk::learning_gap(spec, p.x_max, 100, p.cutoff_max)));
  CHECK(p.info_index >= 0.0);
  CHECK(p.info_index <= 1.0);

  const GameSpec babble = GameSpec::illustrative(20.0, 0.0);
  const auto q = cheaptalk::ladder_point(babble, cheaptalk::solve(babble, 100));
  CHECK(q.babbling_only);
  CHECK(q.x_max == 0.0);
  CHECK(q.learning_gap == 1.0);
}

TEST_CASE("transmission vanishes along the ladder while N x stays bounded") {
  const std::vector<int> ladder{100, 400, 1600};
  const auto trace = cheaptalk::trace_most_informative(GameSpec::illustrative(2.0, 0.1), ladder);
  REQUIRE(trace.size() == 3);
  CHECK(trace[1].x_max < trace[0].x_max);
  CHECK(trace[2].x_max < trace[1].x_max);
  CHECK(trace[2].n_x_max < 10 * trace[0].n_x_max);
  for (const auto& p : trace) CHECK(p.learning_gap > 1e-3);
}

TEST_CASE("sender welfare plateau is the first point never exceeded later") {
  std::vector<cheaptalk::LadderPoint> points(5);
  const double v[] = {1.0, 3.0, 2.0, 2.5, 2.0};
  for (int k = 0; k < 5; ++k) {
    points[k].n = 50 * (k + 1);
    points[k].v_sender_max = v[k];
    points[k].cutoff_max = 3 + (k % 2);
    points[k].babbling_only = false;
  }
  const auto trace = cheaptalk::trace_sender_welfare(points);
  REQUIRE(trace.plateau_index.has_value());
  CHECK(*trace.plateau_index == 1);
  CHECK(trace.cutoff_alternates);
}

TEST_CASE("parameter transforms hit their targets and keep everything else") {
  const GameSpec base = GameSpec::illustrative(2.0, 0.1);
  const GameSpec r = cheaptalk::with_conflict_ratio(base, 3.3);
  CHECK(cheaptalk::conflict_profile(r).ratio == doctest::Approx(3.3));
  CHECK(r.prior == base.prior);
  CHECK(r.u_senders == base.u_senders);

  GameSpec skew = GameSpec::illustrative(2.0, 0.1, {0.2, 0.5, 0.8}, 2.0);
  const GameSpec q = cheaptalk::with_disagreement_mass(skew, 0.25);
  CHECK(q.prior[1] == doctest::Approx(0.25));
  CHECK(q.prior[2] / q.prior[0] == doctest::Approx(2.0));
  CHECK(q.prior[0] + q.prior[1] + q.prior[2] == doctest::Approx(1.0));
}

TEST_CASE("information index is bounded and zero without communication") {
  const auto babble = cheaptalk::information_index(GameSpec::illustrative(20.0, 0.0), 200);
  CHECK(babble.defined);
  CHECK(babble.value == 0.0);
  double prev = 1.0;
  for (double t : {1.0, 2.0, 3.0}) {
    const auto idx = cheaptalk::information_index(GameSpec::illustrative(t, 0.1), 200);
    CHECK(idx.defined);
    CHECK(idx.value >= 0.0);
    CHECK(idx.value <= prev);
    prev = idx.value;
  }
}

TEST_CASE("sweeps report the largest increase of x_max") {
  const std::vector<double> values{0.0, 0.1, 0.2};
  const auto sweep = cheaptalk::sweep_most_informative(
      GameSpec::illustrative(2.0, 0.1), cheaptalk::SweepParameter::disagreement_mass, values, 100);
  REQUIRE(sweep.rows.size() == 3);
  CHECK(sweep.max_x_increase() <= 0.0);
}

TEST_CASE("threshold bracket separates persistence from failure") {
  const std::vector<int> ladder{50, 100, 200};
  const GameSpec base = GameSpec::illustrative(2.0, 0.1);
  const auto e = cheaptalk::estimate_qhat(base, ladder, 1e-2);
  CHECK(e.q_lo < e.q_hi);
  CHECK(e.q_hi - e.q_lo <= 1e-2);
  CHECK(e.raw_lo == doctest::Approx(e.q_lo / (1.0 - e.q_lo)));
  CHECK(cheaptalk::persists_on_ladder(cheaptalk::with_disagreement_mass(base, e.q_lo), ladder));
  CHECK_FALSE(
      cheaptalk::persists_on_ladder(cheaptalk::with_disagreement_mass(base, e.q_hi), ladder));
  CHECK_THROWS(cheaptalk::estimate_qhat(GameSpec::illustrative(8.0, 0.1), ladder, 1e-2));
}

TEST_CASE("near-truthful witness under common interest") {
  const std::vector<int> ladder{10, 20, 50};
  const auto w =
      cheaptalk::find_near_truthful_equilibrium(GameSpec::illustrative(8.0, 0.0), 0.1, ladder);
  REQUIRE(w.has_value());
  CHECK(w->equilibrium.x >= 0.9);
}
