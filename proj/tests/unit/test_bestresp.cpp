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

#include "cheaptalk/bestresp.hpp"
#include "cheaptalk/model.hpp"
#include "oracle.hpp"

using cheaptalk::GameSpec;
using cheaptalk::SenderStrategy;

TEST_CASE("receiver ratio matches direct posterior weights") {
  const GameSpec spec = GameSpec::illustrative(2.0, 0.1);
  for (int n : {5, 50}) {
    for (double x : {0.2, 0.6, 1.0}) {
      for (int t = 0; t <= n; t += 3) {
        CHECK(cheaptalk::receiver_ratio(spec, SenderStrategy::on_high(x), n, t) ==
              doctest::Approx(std::log(oracle::receiver_lr(spec, x, n, t))).epsilon(1e-10));
      }
    }
  }
}

TEST_CASE("receiver cutoff is the first tally favoring the proposal") {
  const GameSpec spec = GameSpec::illustrative(2.0, 0.1);
  for (int n : {3, 20, 50, 120}) {
    for (double x : {0.05, 0.3, 0.9}) {
      CHECK(cheaptalk::receiver_cutoff(spec, SenderStrategy::on_high(x), n) ==
            oracle::receiver_cutoff(spec, x, n));
    }
  }
  CHECK_THROWS(cheaptalk::receiver_cutoff(spec, SenderStrategy{0.5, 0.5}, 10));
}

TEST_CASE("sender ratios match pivotal weights for both signals") {
  const GameSpec spec = GameSpec::illustrative(1.6, 0.05);
  const int n = 40;
  for (double x : {0.1, 0.5, 1.0}) {
    for (int cutoff : {1, 4, 17, 40}) {
      const auto r = cheaptalk::sender_ratios(spec, SenderStrategy::on_high(x), n, cutoff);
      CHECK(r.log_high ==
            doctest::Approx(std::log(oracle::sender_lr(spec, x, n, cutoff, true))).epsilon(1e-10));
      CHECK(r.log_low ==
            doctest::Approx(std::log(oracle::sender_lr(spec, x, n, cutoff, false))).epsilon(1e-10));
      CHECK(r.log_high > r.log_low);
    }
  }
}

TEST_CASE("posterior is a distribution moving up with the tally") {
  const GameSpec spec = GameSpec::illustrative(2.0, 0.1);
  const auto s = SenderStrategy::on_high(0.5);
  double prev_high = 0.0;
  for (int t = 0; t <= 30; ++t) {
    const auto post = cheaptalk::receiver_posterior(spec, s, 30, t);
    CHECK(post[0] + post[1] + post[2] == doctest::Approx(1.0));
    CHECK(post[2] >= prev_high);
    prev_high = post[2];
  }
}

TEST_CASE("classification uses a symmetric indifference band") {
  CHECK(cheaptalk::classify(1e-3) == cheaptalk::Preference::approve);
  CHECK(cheaptalk::classify(-1e-3) == cheaptalk::Preference::reject);
  CHECK(cheaptalk::classify(1e-12) == cheaptalk::Preference::indifferent);
}

TEST_CASE("sender condition checks consistency with the strategy") {
  const GameSpec spec = GameSpec::illustrative(2.0, 0.1);
  // At N = 1 the single sender is always pivotal, so truthful play is a best
  // response iff the low and high posteriors straddle indifference.
  const auto c = cheaptalk::sender_condition(spec, SenderStrategy::truthful(), 1, 1);
  const bool low_rejects = oracle::sender_lr(spec, 1.0, 1, 1, false) < 1.0;
  const bool high_approves = oracle::sender_lr(spec, 1.0, 1, 1, true) > 1.0;
  CHECK(c.best_response == (low_rejects && high_approves));
}
