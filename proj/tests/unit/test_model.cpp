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

#include <algorithm>
#include <string>

#include "cheaptalk/model.hpp"

namespace {

using cheaptalk::GameSpec;

bool violates(const GameSpec& spec, const std::string& assumption) {
  const auto v = cheaptalk::check(spec);
  return std::any_of(v.begin(), v.end(),
                     [&](const cheaptalk::Violation& x) { return x.assumption == assumption; });
}

}  // namespace

TEST_CASE("illustrative family is valid and carries its parameters") {
  const GameSpec spec = GameSpec::illustrative(2.0, 0.1);
  CHECK(cheaptalk::check(spec).empty());
  CHECK(spec.prior[1] == doctest::Approx(0.1));
  CHECK(spec.prior[0] == doctest::Approx(spec.prior[2]));
  const auto profile = cheaptalk::conflict_profile(spec);
  CHECK(profile.ratio == doctest::Approx(2.0));
  CHECK(profile.q2 == doctest::Approx(0.1));
  CHECK_NOTHROW(cheaptalk::validate(spec));
}

TEST_CASE("conflict ratio is the product of the two payoff quotients") {
  GameSpec spec = GameSpec::illustrative(3.0, 0.1);
  spec.u_senders = {-2.0, -1.0, 0.5};
  spec.u_receiver = {-1.5, 1.0, 9.0};
  REQUIRE(cheaptalk::check(spec).empty());
  CHECK(cheaptalk::conflict_profile(spec).ratio ==
        doctest::Approx((2.0 / 0.5) * (9.0 / 1.5)));
}

TEST_CASE("each assumption is reported by name") {
  GameSpec bad_prior = GameSpec::illustrative(2.0, 0.1);
  bad_prior.prior = {0.5, 0.3, 0.3};
  CHECK(violates(bad_prior, cheaptalk::kPriorAssumption));
  CHECK_THROWS_AS(cheaptalk::validate(bad_prior), cheaptalk::InvalidSpec);

  GameSpec negative = GameSpec::illustrative(2.0, 0.1);
  negative.prior = {-0.1, 0.2, 0.9};
  CHECK(violates(negative, cheaptalk::kPriorAssumption));

  GameSpec shape = GameSpec::illustrative(2.0, 0.1);
  shape.rho.pop_back();
  CHECK(violates(shape, cheaptalk::kShapeAssumption));

  GameSpec states = GameSpec::illustrative(2.0, 0.1);
  states.states = {1.0, 3.0, 2.0};
  CHECK(violates(states, cheaptalk::kStateOrderAssumption));

  GameSpec signals = GameSpec::illustrative(2.0, 0.1);
  signals.rho = {0.5, 0.2, 0.8};
  CHECK(violates(signals, cheaptalk::kSignalOrderAssumption));

  GameSpec pattern = GameSpec::illustrative(2.0, 0.1);
  pattern.u_senders = {-1.0, 1.0, 1.0};
  CHECK(violates(pattern, cheaptalk::kSignPatternAssumption));

  GameSpec weaker = GameSpec::illustrative(0.5, 0.1);
  CHECK(violates(weaker, cheaptalk::kStrongerPreferenceAssumption));
}

TEST_CASE("invalid spec exception lists every violation") {
  GameSpec spec = GameSpec::illustrative(2.0, 0.1);
  spec.prior = {0.5, 0.3, 0.3};
  spec.rho = {0.5, 0.2, 0.8};
  try {
    cheaptalk::validate(spec);
    FAIL("expected InvalidSpec");
  } catch (const cheaptalk::InvalidSpec& e) {
    CHECK(e.violations().size() >= 2);
  }
}

TEST_CASE("sender strategies must be probabilities") {
  CHECK_NOTHROW(cheaptalk::require_valid({0.0, 1.0}));
  CHECK_THROWS(cheaptalk::require_valid({-0.1, 0.5}));
  CHECK_THROWS(cheaptalk::require_valid({0.0, 1.5}));
  CHECK(cheaptalk::SenderStrategy::on_high(0.3).informative());
  CHECK_FALSE(cheaptalk::SenderStrategy{0.4, 0.4}.informative());
}
