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

#ifndef CHEAPTALK_MC_HPP_
#define CHEAPTALK_MC_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cheaptalk/largedev.hpp"
#include "cheaptalk/mechanism.hpp"
#include "cheaptalk/model.hpp"

namespace cheaptalk {

enum class Scenario {
  equilibrium_play,      // strategy + receiver cutoff
  cutoff_mechanism,      // truthful senders, committed cutoff
  randomized_mechanism,  // truthful senders, committed two-cutoff lottery
  message_model_play,    // multi-signal, multi-message model
};

const char* to_string(Scenario scenario);
// Throws std::invalid_argument on an unknown name.
Scenario parse_scenario(const std::string& name);

struct SimConfig {
  std::uint64_t trials = 100000;
  std::uint64_t seed = 1;
  Scenario scenario = Scenario::equilibrium_play;
};

struct ScenarioParams {
  int n = 1;
  SenderStrategy strategy = SenderStrategy::truthful();
  int cutoff = 1;
  std::optional<RandomizedMechanism> mechanism;
  std::optional<MessageModel> model;
};

struct Estimate {
  double value = 0.0;
  double stderr_ = 0.0;
  // Trials behind a proportion; 0 for means.
  std::uint64_t samples = 0;
  // |value - reference| in standard errors. For proportions the larger of the
  // empirical and the reference binomial error is used, so an unobserved rare
  // event is judged against its expected spread. A zero error counts as
  // agreement only on exact equality.
  double z(double reference) const;
  bool agrees(double reference, double sigmas = 4.0) const;
};

struct SimResult {
  Scenario scenario = Scenario::equilibrium_play;
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
  int n = 0;
  std::vector<std::uint64_t> state_counts;
  // [state][tally] for binary messages; empty for the message model.
  std::vector<std::vector<Estimate>> tally_pmf;
  // Probability that the first sender is pivotal, per state.
  std::vector<Estimate> pivot;
  std::vector<Estimate> proposal;
  Estimate sender_welfare;
  Estimate receiver_welfare;
};

// Deterministic for a fixed (spec, params, config) regardless of thread count.
SimResult simulate(const GameSpec& spec, const ScenarioParams& params,
                   const SimConfig& config);

// splitmix64 finalizer; exposed for tests.
std::uint64_t mix64(std::uint64_t x);

}  // namespace cheaptalk

#endif  // CHEAPTALK_MC_HPP_
