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

#include "cheaptalk/model.hpp"

#include <cmath>
#include <numeric>
#include <sstream>

namespace cheaptalk {
namespace {

constexpr double kPriorSumTol = 1e-12;

std::string describe(const std::vector<Violation>& violations) {
  std::ostringstream out;
  out << "invalid game spec:";
  for (const auto& v : violations) {
    out << "\n  " << v.assumption << " violated: " << v.detail << " (" << v.lhs
        << " vs " << v.rhs << ")";
  }
  return out.str();
}

std::string at_state(std::size_t i) {
  return "state " + std::to_string(i + 1);
}

// Index of the first state with positive payoff, or npos if the payoffs do not
// switch sign exactly once from negative to positive.
std::size_t sign_threshold(const std::vector<double>& u) {
  std::size_t first_positive = u.size();
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (u[i] > 0.0) {
      first_positive = i;
      break;
    }
  }
  for (std::size_t i = 0; i < u.size(); ++i) {
    const bool ok = i < first_positive ? u[i] < 0.0 : u[i] > 0.0;
    if (!ok) return std::string::npos;
  }
  return first_positive;
}

void check_three_state_pattern(const GameSpec& spec,
                               std::vector<Violation>& out) {
  const auto& ur = spec.u_receiver;
  const auto& us = spec.u_senders;
  auto need = [&](bool ok, const std::string& what, double value) {
    if (!ok) out.push_back({kSignPatternAssumption, what, value, 0.0});
  };
  need(us[2] > 0.0, "sender payoff must be positive at state 3", us[2]);
  need(ur[2] > 0.0, "receiver payoff must be positive at state 3", ur[2]);
  need(us[0] < 0.0, "sender payoff must be negative at state 1", us[0]);
  need(ur[0] < 0.0, "receiver payoff must be negative at state 1", ur[0]);
  need(us[1] < 0.0, "sender payoff must be negative at state 2", us[1]);
  need(ur[1] > 0.0, "receiver payoff must be positive at state 2", ur[1]);

  if (ur[2] != 0.0 && us[2] != 0.0) {
    const double receiver_doubt = -ur[0] / ur[2];
    const double sender_doubt = -us[0] / us[2];
    if (!(receiver_doubt <= sender_doubt)) {
      out.push_back({kThresholdOrderAssumption,
                     "receiver threshold of doubt -U_R(1)/U_R(3) must not "
                     "exceed the senders' -U_S(1)/U_S(3)",
                     receiver_doubt, sender_doubt});
    }
  }
}

void check_generic_pattern(const GameSpec& spec, std::vector<Violation>& out) {
  const std::size_t tr = sign_threshold(spec.u_receiver);
  const std::size_t ts = sign_threshold(spec.u_senders);
  if (tr == std::string::npos) {
    out.push_back({kSignPatternAssumption,
                   "receiver payoff must cross zero once, from negative to "
                   "positive",
                   0.0, 0.0});
  }
  if (ts == std::string::npos) {
    out.push_back({kSignPatternAssumption,
                   "sender payoff must cross zero once, from negative to "
                   "positive",
                   0.0, 0.0});
  }
  if (tr != std::string::npos && ts != std::string::npos && tr > ts) {
    out.push_back({kThresholdOrderAssumption,
                   "receiver threshold state must not exceed the senders'",
                   static_cast<double>(tr + 1), static_cast<double>(ts + 1)});
  }
}

}  // namespace

InvalidSpec::InvalidSpec(std::vector<Violation> violations)
    : std::invalid_argument(describe(violations)),
      violations_(std::move(violations)) {}

GameSpec GameSpec::illustrative(double t, double q2, std::array<double, 3> rho,
                                double q3_over_q1) {
  GameSpec spec;
  spec.states = {1.0, 2.0, 3.0};
  spec.u_senders = {-1.0, -1.0, 1.0};
  spec.u_receiver = {-1.0, 1.0, t};
  const double q1 = (1.0 - q2) / (1.0 + q3_over_q1);
  spec.prior = {q1, q2, 1.0 - q2 - q1};
  spec.rho = {rho[0], rho[1], rho[2]};
  return spec;
}

std::vector<Violation> check(const GameSpec& spec) {
  std::vector<Violation> out;
  const std::size_t n = spec.states.size();
  if (n < 2 || spec.u_receiver.size() != n || spec.u_senders.size() != n ||
      spec.prior.size() != n || spec.rho.size() != n) {
    out.push_back({kShapeAssumption,
                   "states, u_receiver, u_senders, prior and rho must have "
                   "the same length of at least 2",
                   static_cast<double>(n), 0.0});
    return out;
  }
  for (const auto* field :
       {&spec.states, &spec.u_receiver, &spec.u_senders, &spec.prior,
        &spec.rho}) {
    for (double v : *field) {
      if (!std::isfinite(v)) {
        out.push_back({kShapeAssumption, "all entries must be finite", v, 0.0});
        return out;
      }
    }
  }

  double prior_sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (spec.prior[i] < 0.0) {
      out.push_back({kPriorAssumption, "negative prior at " + at_state(i),
                     spec.prior[i], 0.0});
    }
    prior_sum += spec.prior[i];
  }
  if (std::abs(prior_sum - 1.0) > kPriorSumTol) {
    out.push_back({kPriorAssumption, "prior must sum to 1", prior_sum, 1.0});
  }

  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (!(spec.states[i] < spec.states[i + 1])) {
      out.push_back({kStateOrderAssumption,
                     "state labels must strictly increase at " + at_state(i),
                     spec.states[i], spec.states[i + 1]});
    }
  }

  if (!(spec.rho[0] > 0.0)) {
    out.push_back({kSignalOrderAssumption,
                   "high-signal probability must be positive at state 1",
                   spec.rho[0], 0.0});
  }
  if (!(spec.rho[n - 1] < 1.0)) {
    out.push_back({kSignalOrderAssumption,
                   "high-signal probability must be below 1 at " +
                       at_state(n - 1),
                   spec.rho[n - 1], 1.0});
  }
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (!(spec.rho[i] < spec.rho[i + 1])) {
      out.push_back({kSignalOrderAssumption,
                     "high-signal probability must strictly increase from " +
                         at_state(i) + " to " + at_state(i + 1),
                     spec.rho[i], spec.rho[i + 1]});
    }
  }

  for (std::size_t i = 0; i < n; ++i) {
    if (!(spec.u_receiver[i] >= spec.u_senders[i])) {
      out.push_back({kStrongerPreferenceAssumption,
                     "U_R must be at least U_S at " + at_state(i),
                     spec.u_receiver[i], spec.u_senders[i]});
    }
  }

  if (n == 3) {
    check_three_state_pattern(spec, out);
  } else {
    check_generic_pattern(spec, out);
  }
  return out;
}

GameSpec validate(const GameSpec& spec) {
  auto violations = check(spec);
  if (!violations.empty()) throw InvalidSpec(std::move(violations));
  return spec;
}

void require_three_states(const GameSpec& spec) {
  if (spec.num_states() != 3 || spec.rho.size() != 3 ||
      spec.prior.size() != 3 || spec.u_senders.size() != 3 ||
      spec.u_receiver.size() != 3) {
    throw std::invalid_argument("solver requires a three-state game spec");
  }
}

ConflictProfile conflict_profile(const GameSpec& spec) {
  require_three_states(spec);
  const auto& us = spec.u_senders;
  const auto& ur = spec.u_receiver;
  // Quotient of the two thresholds of doubt. The validator compares exactly
  // these two doubles, so a validated spec yields ratio >= 1 after rounding.
  const double receiver_doubt = -ur[0] / ur[2];
  const double sender_doubt = -us[0] / us[2];
  return {sender_doubt / receiver_doubt, spec.prior[1]};
}

void require_valid(const SenderStrategy& s) {
  if (!(s.x_low >= 0.0 && s.x_low <= s.x_high && s.x_high <= 1.0)) {
    throw std::invalid_argument(
        "sender strategy must satisfy 0 <= x_low <= x_high <= 1");
  }
}

}  // namespace cheaptalk
