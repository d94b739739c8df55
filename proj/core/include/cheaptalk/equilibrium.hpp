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

#ifndef CHEAPTALK_EQUILIBRIUM_HPP_
#define CHEAPTALK_EQUILIBRIUM_HPP_

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "cheaptalk/model.hpp"

namespace cheaptalk {

// Expected payoffs (utils) relative to the status quo.
struct Welfare {
  double sender = 0.0;
  double receiver = 0.0;
};

// Informative symmetric equilibrium: senders approve with probability x on a
// high signal and never on a low one; the receiver implements iff at least
// `cutoff` approvals arrive.
struct Equilibrium {
  double x = 0.0;
  int cutoff = 0;
  int n = 0;
  double log_ls_high = 0.0;
  double log_ls_low = 0.0;
  double v_sender = 0.0;
  double v_receiver = 0.0;
  // x == 1 with the high-signal sender weakly preferring approval.
  bool corner = false;

  SenderStrategy strategy() const { return SenderStrategy::on_high(x); }
};

struct EquilibriumSet {
  int n = 0;
  // Sorted ascending by x.
  std::vector<Equilibrium> equilibria;
  // Payoffs when the receiver ignores the tally.
  Welfare babbling;
  std::optional<std::size_t> most_informative;
  // Cutoffs supporting more than one equilibrium.
  std::vector<int> multi_root_cutoffs;

  bool babbling_only() const { return equilibria.empty(); }
  // Largest-x equilibrium, or nullptr when babbling is the only outcome.
  const Equilibrium* max() const;
};

struct SolveOptions {
  // Points per scan family; the scan uses a uniform and a geometric family.
  int grid_points = 4096;
  double root_tol = 1e-12;
};

// Every informative symmetric equilibrium with n senders. For each
// responsive cutoff the high-signal indifference condition is scanned for
// sign changes and refined by bisection; the x = 1 corner is added when the
// high-signal sender weakly prefers approval. A candidate survives iff the
// low-signal sender weakly prefers rejection and the receiver's best cutoff
// is the one scanned.
EquilibriumSet solve(const GameSpec& spec, int n, const SolveOptions& options = {});

// Same search as solve() with an early exit on the first survivor.
bool has_informative_equilibrium(const GameSpec& spec, int n,
                                 const SolveOptions& options = {});

// V_j = sum_i q_i U_j(i) P[T >= cutoff | i] for any strategy and any cutoff
// in 0..n+1.
Welfare welfare(const GameSpec& spec, const SenderStrategy& strategy, int n,
                int cutoff);

// welfare() for every cutoff 0..n+1.
std::vector<Welfare> welfare_profile(const GameSpec& spec,
                                     const SenderStrategy& strategy, int n);

Welfare babbling_welfare(const GameSpec& spec);

// Receiver payoff when she observes the state.
double full_information_receiver_welfare(const GameSpec& spec);

struct CutoffOptimality {
  bool holds = false;
  int best_cutoff = 0;
  // Sender welfare for cutoffs 0..n+1.
  std::vector<double> sender_welfare;
};

// Whether the equilibrium cutoff maximizes the senders' expected payoff over
// all receiver cutoffs 0..n+1, given the equilibrium sender strategy.
CutoffOptimality cutoff_maximizes_sender_welfare(const GameSpec& spec,
                                                 const Equilibrium& eq);

// E[U_S | tally] for senders playing `strategy`.
double sender_posterior_payoff(const GameSpec& spec,
                               const SenderStrategy& strategy, int n,
                               int tally);

class ParetoViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

struct WelfareRow {
  double x = 0.0;
  int cutoff = 0;
  Welfare welfare;
};

// Welfare table ordered by x, starting with the babbling row (x = 0, cutoff
// -1). Throws ParetoViolation naming the offending pair if either player's
// payoff decreases in x or an equilibrium falls below babbling.
std::vector<WelfareRow> pareto_order(const EquilibriumSet& set);

struct MixedLowSignalWitness {
  SenderStrategy strategy;
  int cutoff = 0;
  double log_ls_low = 0.0;
  double log_ls_high = 0.0;
};

// Brute-force search for an informative equilibrium with x_low > 0 on a
// `resolution` x `resolution` grid over (x_low, x_high), with bisection along
// x_low wherever the low-signal ratio changes sign at a fixed cutoff. Returns
// the first point satisfying both sender conditions and the receiver cutoff
// within `tol`, or nullopt.
std::optional<MixedLowSignalWitness> find_mixed_low_signal_equilibrium(
    const GameSpec& spec, int n, int resolution, double tol = 1e-6);

}  // namespace cheaptalk

#endif  // CHEAPTALK_EQUILIBRIUM_HPP_
