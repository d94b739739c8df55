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

#ifndef CHEAPTALK_LARGEDEV_HPP_
#define CHEAPTALK_LARGEDEV_HPP_

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "cheaptalk/model.hpp"

namespace cheaptalk {

using Matrix = std::vector<std::vector<double>>;

// Total positivity of order two: m[r'][c] m[r][c'] <= m[r][c] m[r'][c'] for
// r < r', c < c'. For likelihood rows this is the monotone likelihood ratio
// property.
bool is_tp2(const Matrix& m, double tol = 1e-12);

// Row j gives the message distribution on signal j.
struct MonotoneStrategyMatrix {
  Matrix p;
  std::size_t signals() const { return p.size(); }
  std::size_t messages() const { return p.empty() ? 0 : p.front().size(); }
};

// Throws std::invalid_argument on non-stochastic rows, a non-monotone matrix,
// or a message that is never sent.
MonotoneStrategyMatrix make_strategy_matrix(Matrix p);

struct MessageModel {
  Matrix signal_kernel;  // states x signals
  MonotoneStrategyMatrix strategy;
  Matrix g;  // states x messages
  double floor = 0.0;
  std::size_t states() const { return g.size(); }
  std::size_t messages() const { return strategy.messages(); }
};

// Throws std::invalid_argument unless kernel rows are stochastic with every
// entry at least `floor` and the kernel has monotone likelihood ratios.
MessageModel make_message_model(Matrix signal_kernel, MonotoneStrategyMatrix strategy,
                                double floor = 0.05);

// Three signals with kernel rows (0.6,0.3,0.1), (0.3,0.4,0.3), (0.1,0.3,0.6)
// and strategy rows (0.8,0.15,0.05), (0.3,0.4,0.3), (0.05,0.15,0.8).
MessageModel default_message_model();

// Binary signals from spec.rho and approve-on-high probability x; messages are
// ordered (reject, approve).
MessageModel binary_message_model(const GameSpec& spec, double x);

double multinomial_logpmf(std::span<const int> tally, std::span<const double> g);

// sum(tally) * [KL(freq, G_j) - KL(freq, G_i)], which equals
// log P[tally | i] - log P[tally | j].
double tally_log_ratio_via_kl(const MessageModel& model, std::span<const int> tally,
                              int i, int j);

// All tallies of n messages over k kinds, lexicographic.
std::vector<std::vector<int>> simplex_lattice(int k, int n);

class ReceiverRule {
 public:
  ReceiverRule(const GameSpec& spec, const MessageModel& model);
  // log of payoff-weighted gains over losses given the tally.
  double log_odds(std::span<const int> tally) const;
  // Ties go to the proposal.
  bool proposal(std::span<const int> tally) const { return log_odds(tally) >= 0.0; }

 private:
  std::vector<double> log_weight_;  // log(q_i |U_R_i|), -inf when zero
  std::vector<int> sign_;
  Matrix log_g_;
};

struct MonotonicityReport {
  bool holds = true;
  std::size_t pairs_checked = 0;
  std::optional<std::vector<int>> counterexample;
};

// Moving one message to the next higher kind never flips the decision from
// proposal to status quo, over every tally of n messages.
MonotonicityReport check_rule_monotone(const GameSpec& spec, const MessageModel& model,
                                       int n);

using Tally3 = std::array<int, 3>;

struct PivotalSet {
  int n = 0;
  std::size_t lattice_size = 0;
  std::vector<Tally3> members;
  // Per member, log P[T | state] with n - 1 other senders.
  std::vector<std::array<double, 3>> member_log_prob;
  std::array<double, 3> log_prob{};
  bool empty() const { return members.empty(); }
  bool full() const { return !members.empty() && members.size() == lattice_size; }
};

// Tallies of the other n - 1 senders where one extra lowest message and one
// extra highest message lead to different decisions. Requires three states
// and three messages.
PivotalSet pivotal_set(const GameSpec& spec, const MessageModel& model, int n);

// Share of P[E_N | state] carried by members whose frequency lies within
// `radius` (Euclidean) of `center`.
double ball_mass_fraction(const PivotalSet& set, std::span<const double> center,
                          double radius, int state);

struct FrequencyContainment {
  double epsilon = 0.0;
  std::size_t outside = 0;
  double max_gap = 0.0;
  bool holds() const { return outside == 0; }
};

// Checks |KL(freq, G_1) - min(KL(freq, G_2), KL(freq, G_3))| < epsilon for
// every member frequency.
FrequencyContainment check_frequency_containment(const MessageModel& model,
                                                 const PivotalSet& set, double epsilon);

struct ChernoffPoint {
  std::vector<double> gamma_star;
  double rate = 0.0;  // KL(gamma_star, G_i)
  double tilt = 0.0;  // gamma_star proportional to G_i^(1-tilt) G_j^tilt
  double residual = 0.0;
  bool degenerate = false;
};

inline constexpr double kChernoffTol = 1e-12;

ChernoffPoint chernoff_point(std::span<const double> g_i, std::span<const double> g_j);

struct RateOrdering {
  double low_mid_rate = 0.0;      // KL(gamma*_{1,2}, G_1)
  double low_high_rate = 0.0;     // KL(gamma*_{1,3}, G_1)
  double low_mid_at_mid = 0.0;    // KL(gamma*_{1,2}, G_2)
  double low_mid_at_high = 0.0;   // KL(gamma*_{1,2}, G_3)
  bool first_holds = false;       // low_mid_rate < low_high_rate
  bool second_holds = false;      // low_mid_at_mid < low_mid_at_high
  // Some inequality holds by a relative margin below 1e-6.
  bool near_degenerate = false;
  bool holds() const { return first_holds && second_holds; }
};

RateOrdering mlrp_rate_ordering(const MessageModel& model);

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;
};

LinearFit fit_line(std::span<const double> x, std::span<const double> y);

struct DecayRow {
  int n = 0;
  bool skipped = false;  // empty pivotal set
  double log_ratio_31 = 0.0;
  double log_ratio_32 = 0.0;
  double mass_in_ball = 0.0;
  std::size_t pivotal_count = 0;
};

inline constexpr double kDefaultBallRadius = 0.1;

struct DecayTrace {
  std::vector<DecayRow> rows;
  std::vector<double> center;  // gamma*_{1,2}
  double radius = kDefaultBallRadius;
  LinearFit fit_31;
  LinearFit fit_32;
};

DecayTrace pivotal_decay_trace(const GameSpec& spec, const MessageModel& model,
                               std::span<const int> ladder,
                               double radius = kDefaultBallRadius);

}  // namespace cheaptalk

#endif  // CHEAPTALK_LARGEDEV_HPP_
