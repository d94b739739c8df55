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

#ifndef CHEAPTALK_CLI_RANDOM_GAME_HPP_
#define CHEAPTALK_CLI_RANDOM_GAME_HPP_

#include <random>

#include "cheaptalk/largedev.hpp"
#include "cheaptalk/model.hpp"

namespace cheaptalk::cli {

struct RandomGameOptions {
  // Mass on the disagreement state is drawn from [q2_min, q2_max].
  double q2_min = 0.01;
  double q2_max = 0.3;
  // Upper bound on the receiver's extra payoff scaling in the high state;
  // larger values allow larger conflict ratios.
  double max_high_boost = 1.5;
};

// A three-state game satisfying every modelling assumption.
GameSpec random_game(std::mt19937_64& rng, const RandomGameOptions& options = {});

// Three states by three messages with strictly monotone likelihood ratios,
// built as an exponential tilt of a random base distribution.
MessageModel random_mlrp_model(std::mt19937_64& rng);

}  // namespace cheaptalk::cli

#endif  // CHEAPTALK_CLI_RANDOM_GAME_HPP_
