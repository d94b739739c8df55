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

#include "cheaptalk/mechanism.hpp"

#include <cmath>
#include <string>

#include "cheaptalk/bestresp.hpp"
#include "cheaptalk/prob.hpp"

namespace cheaptalk {
namespace {

std::vector<double> log_pivots(const GameSpec& spec, int n, int cutoff) {
  if (cutoff < 1 || cutoff > n) {
    throw std::invalid_argument("cutoff must lie in 1..n, got " +
                                std::to_string(cutoff));
  }
  std::vector<double> out;
  out.reserve(spec.rho.size());
  for (double r : spec.rho) out.push_back(binomial_logpmf(n - 1, cutoff - 1, r).value);
  return out;
}

double safe_log(double v) { return v > 0.0 ? std::log(v) : kNegInf; }

// Fills the expectation, ratio and verdict fields from report.log_pivot.
void evaluate_incentives(const GameSpec& spec, ICReport& report) {
  const std::size_t k = spec.rho.size();
  for (Signal s : {Signal::high, Signal::low}) {
    std::vector<double> w(k);
    double m = kNegInf;
    for (std::size_t i = 0; i < k; ++i) {
      w[i] = safe_log(spec.prior[i]) + safe_log(signal_probability(spec.rho[i], s)) +
             report.log_pivot[i];
      m = std::max(m, w[i]);
    }
    double e = std::nan("");
    if (m != kNegInf) {
      double num = 0.0, den = 0.0;
      for (std::size_t i = 0; i < k; ++i) {
        const double p = std::exp(w[i] - m);
        num += p * spec.u_senders[i];
        den += p;
      }
      e = num / den;
    }
    double log_pos = kNegInf, log_neg = kNegInf;
    for (std::size_t i = 0; i < k; ++i) {
      const double u = spec.u_senders[i];
      if (u > 0.0) log_pos = log_add(log_pos, w[i] + std::log(u));
      if (u < 0.0) log_neg = log_add(log_neg, w[i] + std::log(-u));
    }
    const double ratio =
        (log_pos == kNegInf && log_neg == kNegInf) ? 0.0 : log_pos - log_neg;
    if (s == Signal::high) {
      report.e_high = e;
      report.log_ratio_high = ratio;
    } else {
      report.e_low = e;
      report.log_ratio_low = ratio;
    }
  }
  report.ic = report.e_high >= -kIcTol && report.e_low <= kIcTol;
}

double log_upper_tail(int n, int cutoff, double p) {
  return binomial_log_upper_tails(n, p)[cutoff];
}

// log P[T < cutoff] computed from the complementary tally.
double log_lower_tail(int n, int cutoff, double p) {
  return binomial_log_upper_tails(n, 1.0 - p)[n - cutoff + 1];
}

}  // namespace

ICReport cutoff_ic(const GameSpec& spec, int n, int cutoff) {
  ICReport report;
  report.log_pivot = log_pivots(spec, n, cutoff);
  report.log_pivot_alpha = report.log_pivot;
  report.log_pivot_beta = report.log_pivot;
  evaluate_incentives(spec, report);
  return report;
}

ICReport mechanism_ic(const GameSpec& spec, const RandomizedMechanism& m) {
  ICReport report;
  report.log_pivot_alpha = log_pivots(spec, m.n, m.cutoff_alpha);
  report.log_pivot_beta = log_pivots(spec, m.n, m.cutoff_beta);
  const double log_mu = safe_log(m.mu);
  const double log_rest = safe_log(m.one_minus_mu);
  for (std::size_t i = 0; i < spec.rho.size(); ++i) {
    report.log_pivot.push_back(log_add(log_mu + report.log_pivot_alpha[i],
                                       log_rest + report.log_pivot_beta[i]));
  }
  evaluate_incentives(spec, report);
  return report;
}

int sender_optimal_cutoff(const GameSpec& spec, int n) {
  if (n < 1) throw std::invalid_argument("n must be positive");
  const std::size_t k = spec.rho.size();
  for (int t = 0; t <= n; ++t) {
    double log_pos = kNegInf, log_neg = kNegInf;
    for (std::size_t i = 0; i < k; ++i) {
      const double u = spec.u_senders[i];
      if (spec.prior[i] <= 0.0 || u == 0.0) continue;
      // The binomial coefficient is common to every state.
      const double w = std::log(spec.prior[i]) + t * std::log(spec.rho[i]) +
                       (n - t) * std::log1p(-spec.rho[i]) + std::log(std::abs(u));
      (u > 0.0 ? log_pos : log_neg) = log_add(u > 0.0 ? log_pos : log_neg, w);
    }
    if (log_pos == kNegInf) continue;
    if (log_neg == kNegInf || classify(log_pos - log_neg) != Preference::reject) return t;
  }
  return n + 1;
}

double equal_kl_point(double a, double b) {
  if (!(0.0 < a && a < b && b < 1.0)) {
    throw std::invalid_argument("equal_kl_point requires 0 < a < b < 1");
  }
  const double odds = std::log((1.0 - a) / (1.0 - b));
  return odds / (std::log(b / a) + odds);
}

Interval alpha_interval(const GameSpec& spec) {
  require_three_states(spec);
  return {spec.rho[0], equal_kl_point(spec.rho[0], spec.rho[1])};
}

Interval beta_interval(const GameSpec& spec) {
  require_three_states(spec);
  return {equal_kl_point(spec.rho[1], spec.rho[2]), spec.rho[2]};
}

CutoffShares default_cutoff_shares(const GameSpec& spec) {
  const Interval a = alpha_interval(spec);
  const Interval b = beta_interval(spec);
  CutoffShares out;
  out.t_alpha = 0.5 * (a.lo + a.hi);
  out.t_beta = 0.5 * (b.lo + b.hi);
  out.kl_alpha = kl_bernoulli(out.t_alpha, spec.rho[0]);
  for (int it = 0; it < 200; ++it) {
    out.kl_beta = kl_bernoulli(out.t_beta, spec.rho[2]);
    if (out.kl_alpha - out.kl_beta > kRateMargin) return out;
    out.t_beta = 0.5 * (out.t_beta + b.hi);
  }
  throw MechanismError("no default upper share satisfies the rate ordering",
                       out.kl_alpha, out.kl_beta);
}

int nearest_cutoff(int n, double t) {
  return static_cast<int>(std::floor(n * t + 0.5));
}

double balance_residual(const GameSpec& spec, const RandomizedMechanism& m) {
  const double log_beta_high =
      binomial_logpmf(m.n - 1, m.cutoff_beta - 1, spec.rho[2]).value;
  const double log_alpha_low =
      binomial_logpmf(m.n - 1, m.cutoff_alpha - 1, spec.rho[0]).value;
  return std::log(m.one_minus_mu) - std::log(m.mu) + log_beta_high - log_alpha_low +
         std::log(spec.u_senders[2]) - std::log(-spec.u_senders[0]);
}

MechanismBuild build_randomized_mechanism(const GameSpec& spec, int n,
                                          std::optional<double> t_alpha,
                                          std::optional<double> t_beta) {
  require_three_states(spec);
  CutoffShares shares;
  if (t_alpha && t_beta) {
    shares.t_alpha = *t_alpha;
    shares.t_beta = *t_beta;
  } else {
    shares = default_cutoff_shares(spec);
    if (t_alpha) shares.t_alpha = *t_alpha;
    if (t_beta) shares.t_beta = *t_beta;
  }
  if (!alpha_interval(spec).contains(shares.t_alpha)) {
    throw std::invalid_argument("lower cutoff share outside its admissible interval");
  }
  if (!beta_interval(spec).contains(shares.t_beta)) {
    throw std::invalid_argument("upper cutoff share outside its admissible interval");
  }
  shares.kl_alpha = kl_bernoulli(shares.t_alpha, spec.rho[0]);
  shares.kl_beta = kl_bernoulli(shares.t_beta, spec.rho[2]);
  if (!(shares.kl_alpha > shares.kl_beta)) {
    throw MechanismError("rate ordering violated: kl(t_alpha, rho_low) = " +
                             std::to_string(shares.kl_alpha) +
                             " <= kl(t_beta, rho_high) = " +
                             std::to_string(shares.kl_beta),
                         shares.kl_alpha, shares.kl_beta);
  }

  MechanismBuild out;
  RandomizedMechanism& m = out.mechanism;
  m.n = n;
  m.t_alpha = shares.t_alpha;
  m.t_beta = shares.t_beta;
  m.cutoff_alpha = nearest_cutoff(n, shares.t_alpha);
  m.cutoff_beta = nearest_cutoff(n, shares.t_beta);
  if (m.cutoff_alpha < 1 || m.cutoff_beta > n || m.cutoff_alpha >= m.cutoff_beta) {
    throw std::invalid_argument("n = " + std::to_string(n) +
                                " too small to separate the two cutoffs");
  }
  const double r =
      binomial_logpmf(n - 1, m.cutoff_beta - 1, spec.rho[2]).value -
      binomial_logpmf(n - 1, m.cutoff_alpha - 1, spec.rho[0]).value +
      std::log(spec.u_senders[2]) - std::log(-spec.u_senders[0]);
  // mu = sigmoid(r) and 1 - mu = sigmoid(-r), each evaluated without
  // cancellation.
  if (r >= 0.0) {
    const double e = std::exp(-r);
    m.mu = 1.0 / (1.0 + e);
    m.one_minus_mu = e / (1.0 + e);
  } else {
    const double e = std::exp(r);
    m.mu = e / (1.0 + e);
    m.one_minus_mu = 1.0 / (1.0 + e);
  }
  out.ic = mechanism_ic(spec, m);
  out.balance_residual = balance_residual(spec, m);
  for (double rho : spec.rho) {
    out.p_proposal.push_back(
        std::exp(log_add(std::log(m.mu) + log_upper_tail(n, m.cutoff_alpha, rho),
                         safe_log(m.one_minus_mu) + log_upper_tail(n, m.cutoff_beta, rho))));
    out.p_status_quo.push_back(
        std::exp(log_add(std::log(m.mu) + log_lower_tail(n, m.cutoff_alpha, rho),
                         safe_log(m.one_minus_mu) + log_lower_tail(n, m.cutoff_beta, rho))));
  }
  return out;
}

MechanismLadder randomized_mechanism_ladder(const GameSpec& spec,
                                            std::span<const int> ladder,
                                            std::optional<double> t_alpha,
                                            std::optional<double> t_beta) {
  MechanismLadder out;
  const double q_log = std::log(spec.prior[2]) - std::log(spec.prior[0]);
  out.limit_log_ratio_high = q_log + std::log(spec.rho[2]) - std::log(spec.rho[0]);
  out.limit_log_ratio_low = q_log + std::log1p(-spec.rho[2]) - std::log1p(-spec.rho[0]);
  for (int n : ladder) {
    const MechanismBuild b = build_randomized_mechanism(spec, n, t_alpha, t_beta);
    out.shares = {b.mechanism.t_alpha, b.mechanism.t_beta,
                  kl_bernoulli(b.mechanism.t_alpha, spec.rho[0]),
                  kl_bernoulli(b.mechanism.t_beta, spec.rho[2])};
    MechanismLadderRow row;
    row.n = n;
    row.mu = b.mechanism.mu;
    row.cutoff_alpha = b.mechanism.cutoff_alpha;
    row.cutoff_beta = b.mechanism.cutoff_beta;
    row.ic = b.ic.ic;
    row.p_sq_low = b.p_status_quo[0];
    row.p_prop_mid = b.p_proposal[1];
    row.p_prop_high = b.p_proposal[2];
    row.log_ratio_high = b.ic.log_ratio_high;
    row.log_ratio_low = b.ic.log_ratio_low;
    row.balance_residual = b.balance_residual;
    out.rows.push_back(row);
  }
  return out;
}

}  // namespace cheaptalk
