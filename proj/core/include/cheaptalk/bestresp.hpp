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

#ifndef CHEAPTALK_BESTRESP_HPP_
#define CHEAPTALK_BESTRESP_HPP_

#include <vector>

#include "cheaptalk/model.hpp"

namespace cheaptalk {

enum class Signal { low, high };

enum class Preference { reject, indifferent, approve };

// Log-ratios within this band are treated as indifference.
inline constexpr double kIndifferenceTol = 1e-10;

// Probability of observing `signal` in a state with high-signal probability
// `rho`.
double signal_probability(double rho, Signal signal);

// log L_S for a sender who holds `signal` and conditions on being pivotal
// under cutoff `cutoff`: payoff-weighted mass on the high state over the
// payoff-weighted mass on the two states where senders lose.
//
// Throws std::domain_error when the pivot event has zero probability in every
// state.
double sender_ratio(const GameSpec& spec, const SenderStrategy& strategy,
                    int n, int cutoff, Signal signal);

struct SenderRatio {
  double log_low = 0.0;
  double log_high = 0.0;
};

SenderRatio sender_ratios(const GameSpec& spec, const SenderStrategy& strategy,
                          int n, int cutoff);

// log L_R after `tally` approvals out of n.
double receiver_ratio(const GameSpec& spec, const SenderStrategy& strategy,
                      int n, int tally);

struct ReceiverRatio {
  // One entry per tally 0..n.
  std::vector<double> log_lr;
};

ReceiverRatio receiver_ratios(const GameSpec& spec,
                              const SenderStrategy& strategy, int n);

// Smallest tally with log L_R >= 0, or n + 1 when the receiver never
// implements. Ties go to the proposal. Requires an informative strategy.
int receiver_cutoff(const GameSpec& spec, const SenderStrategy& strategy,
                    int n);

Preference classify(double log_ratio);

struct SenderCondition {
  Preference low = Preference::reject;
  Preference high = Preference::approve;
  // Whether the strategy solves the senders' symmetric best-response system:
  // approve surely when strictly preferred, reject surely when strictly
  // dispreferred, anything when indifferent.
  bool best_response = false;
  SenderRatio ratio;
};

// Requires an informative strategy.
SenderCondition sender_condition(const GameSpec& spec,
                                 const SenderStrategy& strategy, int n,
                                 int cutoff);

// Posterior over the three states after `tally` approvals.
std::vector<double> receiver_posterior(const GameSpec& spec,
                                       const SenderStrategy& strategy, int n,
                                       int tally);

}  // namespace cheaptalk

#endif  // CHEAPTALK_BESTRESP_HPP_
