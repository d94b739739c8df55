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

#ifndef CHEAPTALK_MECHANISM_HPP_
#define CHEAPTALK_MECHANISM_HPP_

#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "cheaptalk/model.hpp"

namespace cheaptalk {

inline constexpr double kIcTol = 1e-10;

// Receiver commits to the cutoff `cutoff_alpha` with probability mu and to
// `cutoff_beta` otherwise. `one_minus_mu` is stored separately so that values
// of mu within an ulp of 1 keep their complement.
struct RandomizedMechanism {
  int n = 0;
  double mu = 1.0;
  double one_minus_mu = 0.0;
  int cutoff_alpha = 0;
  int cutoff_beta = 0;
  double t_alpha = 0.0;
  double t_beta = 0.0;
};

// Sender incentives conditional on being pivotal, with every other sender
// reporting truthfully.
struct ICReport {
  // Normalized expectations E[U_S | signal, pivotal].
  double e_high = 0.0;
  double e_low = 0.0;
  bool ic = false;
  // Per-state log pivot probabilities. For a single cutoff the beta entries
  // repeat the alpha ones.
  std::vector<double> log_pivot_alpha;
  std::vector<double> log_pivot_beta;
  std::vector<double> log_pivot;
  // log of q3 P[s|high state] P[piv] U_S / (-sum over the other states).
  double log_ratio_high = 0.0;
  double log_ratio_low = 0.0;
};

ICReport cutoff_ic(const GameSpec& spec, int n, int cutoff);
ICReport mechanism_ic(const GameSpec& spec, const RandomizedMechanism& mechanism);

// Smallest T such that senders sharing T truthful high signals out of n
// prefer the proposal; n + 1 if no such T.
int sender_optimal_cutoff(const GameSpec& spec, int n);

// The t at which kl_bernoulli(t, a) == kl_bernoulli(t, b), for 0 < a < b < 1.
double equal_kl_point(double a, double b);

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  bool contains(double t) const { return t > lo && t < hi; }
};

// Open interval for the lower cutoff share: pivotal events there are far
// likelier in the low state than in the disagreement state.
Interval alpha_interval(const GameSpec& spec);
// Open interval for the upper cutoff share.
Interval beta_interval(const GameSpec& spec);

struct CutoffShares {
  double t_alpha = 0.0;
  double t_beta = 0.0;
  double kl_alpha = 0.0;  // kl_bernoulli(t_alpha, rho_low)
  double kl_beta = 0.0;   // kl_bernoulli(t_beta, rho_high)
};

inline constexpr double kRateMargin = 1e-12;

// Interval midpoints; t_beta is bisected toward rho_high until the lower
// cutoff's pivotal rate strictly exceeds the upper one's.
CutoffShares default_cutoff_shares(const GameSpec& spec);

// Nearest integer to n * t, halves rounded up.
int nearest_cutoff(int n, double t);

class MechanismError : public std::invalid_argument {
 public:
  MechanismError(const std::string& what, double kl_alpha, double kl_beta)
      : std::invalid_argument(what), kl_alpha_(kl_alpha), kl_beta_(kl_beta) {}
  double kl_alpha() const { return kl_alpha_; }
  double kl_beta() const { return kl_beta_; }

 private:
  double kl_alpha_;
  double kl_beta_;
};

struct MechanismBuild {
  RandomizedMechanism mechanism;
  ICReport ic;
  // P[proposal | state] under the mixture, and the status-quo complement.
  std::vector<double> p_proposal;
  std::vector<double> p_status_quo;
  // Residual of the mixing-balance condition in log space.
  double balance_residual = 0.0;
};

// Throws std::invalid_argument if a share lies outside its interval and
// MechanismError if the rate ordering fails.
MechanismBuild build_randomized_mechanism(const GameSpec& spec, int n,
                                          std::optional<double> t_alpha = {},
                                          std::optional<double> t_beta = {});

double balance_residual(const GameSpec& spec, const RandomizedMechanism& mechanism);

struct MechanismLadderRow {
  int n = 0;
  double mu = 0.0;
  int cutoff_alpha = 0;
  int cutoff_beta = 0;
  bool ic = false;
  double p_sq_low = 0.0;
  double p_prop_mid = 0.0;
  double p_prop_high = 0.0;
  double log_ratio_high = 0.0;
  double log_ratio_low = 0.0;
  double balance_residual = 0.0;
};

struct MechanismLadder {
  CutoffShares shares;
  std::vector<MechanismLadderRow> rows;
  // log of (q3/q1) P[s|high]/P[s|low]: the value both ratios approach.
  double limit_log_ratio_high = 0.0;
  double limit_log_ratio_low = 0.0;
};

MechanismLadder randomized_mechanism_ladder(const GameSpec& spec,
                                            std::span<const int> ladder,
                                            std::optional<double> t_alpha = {},
                                            std::optional<double> t_beta = {});

}  // namespace cheaptalk

#endif  // CHEAPTALK_MECHANISM_HPP_
