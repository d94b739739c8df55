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

#include "cheaptalk/bestresp.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

#include "cheaptalk/prob.hpp"

namespace cheaptalk {
namespace {

// log(weight * payoff) for a positive product, -inf when the weight is 0.
double log_weight(double weight, double payoff_magnitude) {
  if (weight <= 0.0) return kNegInf;
  return std::log(weight) + std::log(payoff_magnitude);
}

// Ratio of two log masses. Both empty means nobody cares about the event;
// report indifference.
double log_ratio(double log_num, double log_den) {
  if (log_num == kNegInf && log_den == kNegInf) return 0.0;
  return log_num - log_den;
}

void require_informative(const SenderStrategy& s, const char* what) {
  require_valid(s);
  if (!s.informative()) {
    throw std::invalid_argument(std::string(what) +
                                " requires an informative strategy "
                                "(x_low < x_high)");
  }
}

}  // namespace

double signal_probability(double rho, Signal signal) {
  return signal == Signal::high ? rho : 1.0 - rho;
}

double sender_ratio(const GameSpec& spec, const SenderStrategy& strategy,
                    int n, int cutoff, Signal signal) {
  require_three_states(spec);
  require_valid(strategy);
  std::array<double, 3> log_piv{};
  bool any = false;
  for (int i = 0; i < 3; ++i) {
    log_piv[i] = pivot_logpmf(spec, strategy, n, cutoff, i).value;
    any = any || log_piv[i] != kNegInf;
  }
  if (!any) {
    throw std::domain_error("pivot event has zero probability in every state");
  }
  const auto& q = spec.prior;
  const auto& us = spec.u_senders;
  auto term = [&](int i) {
    return log_weight(q[i] * signal_probability(spec.rho[i], signal),
                      std::abs(us[i])) +
           log_piv[i];
  };
  const std::array<double, 2> losses{term(0), term(1)};
  return log_ratio(term(2), log_sum_exp(losses));
}

SenderRatio sender_ratios(const GameSpec& spec, const SenderStrategy& strategy,
                          int n, int cutoff) {
  return {sender_ratio(spec, strategy, n, cutoff, Signal::low),
          sender_ratio(spec, strategy, n, cutoff, Signal::high)};
}

double receiver_ratio(const GameSpec& spec, const SenderStrategy& strategy,
                      int n, int tally) {
  require_three_states(spec);
  require_valid(strategy);
  const auto& q = spec.prior;
  const auto& ur = spec.u_receiver;
  std::array<double, 3> t{};
  for (int i = 0; i < 3; ++i) {
    const double lp = tally_logpmf(spec, strategy, n, tally, i).value;
    t[i] = log_weight(q[i], std::abs(ur[i])) + lp;
  }
  const std::array<double, 2> gains{t[1], t[2]};
  return log_ratio(log_sum_exp(gains), t[0]);
}

ReceiverRatio receiver_ratios(const GameSpec& spec,
                              const SenderStrategy& strategy, int n) {
  ReceiverRatio out;
  out.log_lr.reserve(static_cast<std::size_t>(n) + 1);
  for (int t = 0; t <= n; ++t) {
    out.log_lr.push_back(receiver_ratio(spec, strategy, n, t));
  }
  return out;
}

int receiver_cutoff(const GameSpec& spec, const SenderStrategy& strategy,
                    int n) {
  require_informative(strategy, "receiver_cutoff");
  for (int t = 0; t <= n; ++t) {
    if (receiver_ratio(spec, strategy, n, t) >= 0.0) return t;
  }
  return n + 1;
}

Preference classify(double log_ratio) {
  if (log_ratio > kIndifferenceTol) return Preference::approve;
  if (log_ratio < -kIndifferenceTol) return Preference::reject;
  return Preference::indifferent;
}

SenderCondition sender_condition(const GameSpec& spec,
                                 const SenderStrategy& strategy, int n,
                                 int cutoff) {
  require_informative(strategy, "sender_condition");
  SenderCondition out;
  out.ratio = sender_ratios(spec, strategy, n, cutoff);
  out.low = classify(out.ratio.log_low);
  out.high = classify(out.ratio.log_high);
  auto consistent = [](Preference p, double x) {
    switch (p) {
      case Preference::approve:
        return x == 1.0;
      case Preference::reject:
        return x == 0.0;
      case Preference::indifferent:
        return true;
    }
    return false;
  };
  out.best_response =
      consistent(out.low, strategy.x_low) && consistent(out.high, strategy.x_high);
  return out;
}

std::vector<double> receiver_posterior(const GameSpec& spec,
                                       const SenderStrategy& strategy, int n,
                                       int tally) {
  require_three_states(spec);
  std::array<double, 3> lw{};
  for (int i = 0; i < 3; ++i) {
    lw[i] = (spec.prior[i] > 0.0 ? std::log(spec.prior[i]) : kNegInf) +
            tally_logpmf(spec, strategy, n, tally, i).value;
  }
  const double norm = log_sum_exp(lw);
  std::vector<double> post(3, 0.0);
  if (norm == kNegInf) return post;
  for (int i = 0; i < 3; ++i) post[i] = std::exp(lw[i] - norm);
  return post;
}

}  // namespace cheaptalk
