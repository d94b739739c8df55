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

#ifndef CHEAPTALK_PROB_HPP_
#define CHEAPTALK_PROB_HPP_

#include <limits>
#include <span>
#include <vector>

#include "cheaptalk/model.hpp"

namespace cheaptalk {

inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// Natural-log probability in [-inf, 0].
struct LogProb {
  double value = kNegInf;

  double prob() const;
  bool operator==(const LogProb&) const = default;
};

// log(exp(a) + exp(b)) with -inf handled as the additive identity.
double log_add(double a, double b);

// Log-sum-exp over `terms`, summed in index order. Empty input gives -inf.
double log_sum_exp(std::span<const double> terms);

// log C(n, k) via log-gamma; -inf outside 0 <= k <= n.
double log_choose(int n, int k);

// Binomial log-pmf with exact point masses at p = 0 and p = 1.
LogProb binomial_logpmf(int n, int k, double p);

// log P[X >= k] for every k in 0..n+1 (entry n+1 is -inf).
std::vector<double> binomial_log_upper_tails(int n, double p);

// Probability that one sender approves in a state with high-signal
// probability `rho`.
double approval_probability(double rho, const SenderStrategy& strategy);

// Probability of `tally` approvals out of `n` senders in `state`.
// Throws std::out_of_range unless 0 <= tally <= n.
LogProb tally_logpmf(const GameSpec& spec, const SenderStrategy& strategy,
                     int n, int tally, int state);

// Probability that exactly cutoff - 1 of the other n - 1 senders approve.
// Throws std::out_of_range unless 1 <= cutoff <= n.
LogProb pivot_logpmf(const GameSpec& spec, const SenderStrategy& strategy,
                     int n, int cutoff, int state);

// Bernoulli relative entropy with 0 log 0 = 0. Throws std::domain_error when
// b is 0 or 1 and a differs from b.
double kl_bernoulli(double a, double b);

// Categorical relative entropy sum_k gamma_k log(gamma_k / g_k). Throws
// std::domain_error if `g` has a non-positive coordinate or sizes differ.
double kl_categorical(std::span<const double> gamma, std::span<const double> g);

// N * [KL(T/N, a_j) - KL(T/N, a_i)], i.e. log P[T | i] - log P[T | j]
// computed through the relative-entropy route.
double tally_ratio_via_kl(const GameSpec& spec, const SenderStrategy& strategy,
                          int n, int tally, int state_i, int state_j);

}  // namespace cheaptalk

#endif  // CHEAPTALK_PROB_HPP_
