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

#include "cheaptalk/prob.hpp"

#include <math.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace cheaptalk {
namespace {

// glibc's lgamma writes the global signgam; the reentrant variant keeps the
// kernels safe to call from worker threads.
double log_gamma(double x) {
  int sign = 0;
  return ::lgamma_r(x, &sign);
}

void require_state(const GameSpec& spec, int state) {
  if (state < 0 || static_cast<std::size_t>(state) >= spec.num_states()) {
    throw std::out_of_range("state index " + std::to_string(state) +
                            " out of range");
  }
}

// x log(x / y) with 0 log 0 = 0.
double xlogx_over_y(double x, double y) {
  if (x == 0.0) return 0.0;
  return x * std::log(x / y);
}

}  // namespace

double LogProb::prob() const { return std::exp(value); }

double log_add(double a, double b) {
  if (a == kNegInf) return b;
  if (b == kNegInf) return a;
  const double hi = std::max(a, b);
  const double lo = std::min(a, b);
  return hi + std::log1p(std::exp(lo - hi));
}

double log_sum_exp(std::span<const double> terms) {
  double hi = kNegInf;
  for (double t : terms) hi = std::max(hi, t);
  if (hi == kNegInf) return kNegInf;
  if (hi == std::numeric_limits<double>::infinity()) return hi;
  double sum = 0.0;
  for (double t : terms) sum += std::exp(t - hi);
  return hi + std::log(sum);
}

double log_choose(int n, int k) {
  if (k < 0 || k > n || n < 0) return kNegInf;
  if (k == 0 || k == n) return 0.0;
  return log_gamma(n + 1.0) - log_gamma(k + 1.0) - log_gamma(n - k + 1.0);
}

LogProb binomial_logpmf(int n, int k, double p) {
  if (k < 0 || k > n) return {kNegInf};
  if (p <= 0.0) return {k == 0 ? 0.0 : kNegInf};
  if (p >= 1.0) return {k == n ? 0.0 : kNegInf};
  return {log_choose(n, k) + k * std::log(p) + (n - k) * std::log1p(-p)};
}

std::vector<double> binomial_log_upper_tails(int n, double p) {
  std::vector<double> tails(static_cast<std::size_t>(n) + 2, kNegInf);
  // Sum the short side of the mode directly and take the complement on the
  // long side, so neither tail loses relative accuracy.
  const int split = std::clamp(static_cast<int>(std::floor(n * p)), 0, n);
  double upper = kNegInf;
  for (int k = n; k > split; --k) {
    upper = log_add(upper, binomial_logpmf(n, k, p).value);
    tails[static_cast<std::size_t>(k)] = std::min(upper, 0.0);
  }
  double lower = kNegInf;  // log P[X <= k - 1]
  for (int k = 0; k <= split; ++k) {
    tails[static_cast<std::size_t>(k)] =
        lower == kNegInf ? 0.0 : std::log1p(-std::exp(std::min(lower, 0.0)));
    lower = log_add(lower, binomial_logpmf(n, k, p).value);
  }
  return tails;
}

double approval_probability(double rho, const SenderStrategy& s) {
  return rho * s.x_high + (1.0 - rho) * s.x_low;
}

LogProb tally_logpmf(const GameSpec& spec, const SenderStrategy& strategy,
                     int n, int tally, int state) {
  if (tally < 0 || tally > n) {
    throw std::out_of_range("tally " + std::to_string(tally) +
                            " outside 0.." + std::to_string(n));
  }
  require_state(spec, state);
  const double a = approval_probability(spec.rho[state], strategy);
  return binomial_logpmf(n, tally, a);
}

LogProb pivot_logpmf(const GameSpec& spec, const SenderStrategy& strategy,
                     int n, int cutoff, int state) {
  if (cutoff < 1 || cutoff > n) {
    throw std::out_of_range("cutoff " + std::to_string(cutoff) +
                            " outside 1.." + std::to_string(n));
  }
  require_state(spec, state);
  const double a = approval_probability(spec.rho[state], strategy);
  return binomial_logpmf(n - 1, cutoff - 1, a);
}

double kl_bernoulli(double a, double b) {
  if (!(a >= 0.0 && a <= 1.0) || !(b >= 0.0 && b <= 1.0)) {
    throw std::domain_error("kl_bernoulli arguments must lie in [0, 1]");
  }
  if (b == 0.0 || b == 1.0) {
    if (a == b) return 0.0;
    throw std::domain_error("kl_bernoulli reference at 0 or 1 with a != b");
  }
  return xlogx_over_y(a, b) + xlogx_over_y(1.0 - a, 1.0 - b);
}

double kl_categorical(std::span<const double> gamma,
                      std::span<const double> g) {
  if (gamma.size() != g.size()) {
    throw std::domain_error("kl_categorical size mismatch");
  }
  double kl = 0.0;
  for (std::size_t k = 0; k < g.size(); ++k) {
    if (!(g[k] > 0.0)) {
      throw std::domain_error("kl_categorical reference must be interior");
    }
    kl += xlogx_over_y(gamma[k], g[k]);
  }
  return std::max(kl, 0.0);
}

double tally_ratio_via_kl(const GameSpec& spec, const SenderStrategy& strategy,
                          int n, int tally, int state_i, int state_j) {
  if (tally < 0 || tally > n || n < 1) {
    throw std::out_of_range("tally " + std::to_string(tally) +
                            " outside 0.." + std::to_string(n));
  }
  require_state(spec, state_i);
  require_state(spec, state_j);
  if (state_i == state_j) return 0.0;
  const double freq = static_cast<double>(tally) / n;
  const double ai = approval_probability(spec.rho[state_i], strategy);
  const double aj = approval_probability(spec.rho[state_j], strategy);
  return n * (kl_bernoulli(freq, aj) - kl_bernoulli(freq, ai));
}

}  // namespace cheaptalk
