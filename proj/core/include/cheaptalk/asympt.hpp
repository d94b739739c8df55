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

#ifndef CHEAPTALK_ASYMPT_HPP_
#define CHEAPTALK_ASYMPT_HPP_

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cheaptalk/equilibrium.hpp"
#include "cheaptalk/model.hpp"

namespace cheaptalk {

// Every limit statement here is checked as a finite-N trend on an explicit
// ladder of sender counts. Results carry that label; they are evidence, not
// proofs.
inline constexpr const char* kFiniteNNote =
    "finite-N evidence on an explicit ladder; not a limit certificate";

inline const std::vector<int>& default_ladder() {
  static const std::vector<int> ladder{50, 100, 200, 400, 800, 1600};
  return ladder;
}

// ---------------------------------------------------------------------------
// Regime classification.

enum class CommonInterestRegime { babbling_only, aggregating, knife_edge };
enum class DisagreementRegime { fail, persist_candidate, boundary };

const char* to_string(CommonInterestRegime regime);
const char* to_string(DisagreementRegime regime);

// (rho3 / rho1) * ((1 - rho1) / (1 - rho3)): the likelihood jump from
// swapping a low signal for a high one.
double signal_swap_threshold(const GameSpec& spec);
// rho3 / rho1: the likelihood jump of one extra high signal.
double high_signal_threshold(const GameSpec& spec);

// Relative tolerance under which a conflict ratio is reported as sitting on a
// threshold.
inline constexpr double kRegimeBoundaryTol = 1e-12;

// Regime when the disagreement state has zero prior mass: babbling only above
// the signal-swap threshold, aggregation below it. Throws
// std::invalid_argument when q2 != 0.
CommonInterestRegime classify_without_disagreement(const GameSpec& spec);

// Regime when the disagreement state has positive mass: transmission fails
// above the high-signal threshold and may persist below it. Throws
// std::invalid_argument when q2 <= 0.
DisagreementRegime classify_with_disagreement(const GameSpec& spec);

// ---------------------------------------------------------------------------
// Ladder traces of the most informative equilibrium.

struct LadderPoint {
  int n = 0;
  bool babbling_only = true;
  std::size_t equilibrium_count = 0;
  double x_max = 0.0;
  // 0 when babbling only.
  int cutoff_max = 0;
  double n_x_max = 0.0;
  double v_sender_max = 0.0;
  double v_receiver_max = 0.0;
  double v_receiver_babbling = 0.0;
  double v_receiver_full = 0.0;
  // P(proposal | low state) + P(status quo | high state) at the most
  // informative equilibrium (or babbling).
  double learning_gap = 1.0;
  // (V_R^max - V_R^0) / (V_R^full - V_R^0); NaN when the denominator is 0.
  double info_index = 0.0;
};

// Summary of one solved sender count.
LadderPoint ladder_point(const GameSpec& spec, const EquilibriumSet& set);

// solve() at every ladder point, summarized.
std::vector<LadderPoint> trace_most_informative(const GameSpec& spec,
                                                std::span<const int> ladder,
                                                const SolveOptions& options = {});

// P(proposal | low state) + P(status quo | high state) when senders play x on
// a high signal and the receiver uses `cutoff` (0..n+1).
double learning_gap(const GameSpec& spec, double x, int n, int cutoff);

struct SenderWelfareTrace {
  std::vector<int> ladder;
  std::vector<double> v_sender_max;
  std::vector<int> cutoff_max;
  // First ladder index (before the last) whose value is never exceeded later;
  // nullopt if none.
  std::optional<std::size_t> plateau_index;
  // The most informative cutoff moves between adjacent integers along the
  // ladder; monotonicity is reported rather than asserted in that case.
  bool cutoff_alternates = false;
};

SenderWelfareTrace trace_sender_welfare(std::span<const LadderPoint> points);

struct NearTruthfulWitness {
  int n = 0;
  Equilibrium equilibrium;
};

// Smallest ladder N exhibiting an equilibrium with x >= 1 - epsilon.
// Requires q2 = 0 and the aggregating regime; nullopt means inconclusive up to
// the ladder top.
std::optional<NearTruthfulWitness> find_near_truthful_equilibrium(
    const GameSpec& spec, double epsilon, std::span<const int> ladder,
    const SolveOptions& options = {});

struct InformationIndex {
  int n = 0;
  bool defined = false;
  double value = 0.0;
  double v_receiver_max = 0.0;
  double v_receiver_babbling = 0.0;
  double v_receiver_full = 0.0;
  std::string note;
};

// Share of the receiver's attainable gain over babbling realized by the most
// informative equilibrium at a single (large) n, standing in for the limsup.
InformationIndex information_index(const GameSpec& spec, int n,
                                   const SolveOptions& options = {});

// ---------------------------------------------------------------------------
// Comparative statics.

// Same payoffs scaled in U_R(high) so that the conflict ratio equals `ratio`.
GameSpec with_conflict_ratio(const GameSpec& spec, double ratio);

// Prior with q2 on the disagreement state and the base spec's q3/q1 kept.
GameSpec with_disagreement_mass(const GameSpec& spec, double q2);

enum class SweepParameter { conflict_ratio, disagreement_mass };

const char* to_string(SweepParameter parameter);

struct SweepRow {
  double parameter = 0.0;
  LadderPoint point;
};

struct SweepResult {
  SweepParameter parameter = SweepParameter::conflict_ratio;
  int n = 0;
  std::vector<SweepRow> rows;

  // Largest upward step in x_max along the grid (0 when nonincreasing).
  double max_x_increase() const;
};

// x_max (and the rest of the ladder summary) at each grid value.
SweepResult sweep_most_informative(const GameSpec& base, SweepParameter parameter,
                                   std::span<const double> values, int n,
                                   const SolveOptions& options = {});

// ---------------------------------------------------------------------------
// Disagreement-mass threshold.

struct QhatEstimate {
  // Bracket on the share of prior mass on the disagreement state, with
  // q3/q1 fixed: transmission persists at q_lo on every probe and fails at
  // q_hi on at least one.
  double q_lo = 0.0;
  double q_hi = 1.0;
  // Same bracket expressed as unnormalized q2 added to fixed (q1, q3) with
  // q1 + q3 = 1.
  double raw_lo = 0.0;
  double raw_hi = 0.0;
  double estimate() const { return 0.5 * (q_lo + q_hi); }
  // Existence was observed to fail at some probe and return at a larger one.
  bool ladder_non_monotone = false;
  bool persists_everywhere = false;
  std::vector<int> ladder;
  int evaluations = 0;
  std::string note;
};

// Whether an informative equilibrium exists at every ladder point.
bool persists_on_ladder(const GameSpec& spec, std::span<const int> ladder,
                        bool* non_monotone = nullptr,
                        const SolveOptions& options = {});

// Bisection on q2 for the finite-N persistence proxy. Requires the conflict
// ratio to be below the high-signal threshold.
QhatEstimate estimate_qhat(const GameSpec& base, std::span<const int> ladder,
                           double tolerance, const SolveOptions& options = {});

}  // namespace cheaptalk

#endif  // CHEAPTALK_ASYMPT_HPP_
