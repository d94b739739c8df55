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

#ifndef CHEAPTALK_TESTS_ORACLE_HPP_
#define CHEAPTALK_TESTS_ORACLE_HPP_

#include <cmath>
#include <vector>

#include "cheaptalk/model.hpp"

// Straightforward double-precision reimplementation of the binary game used
// as an independent check on the library.
namespace oracle {

inline double binom_pmf(int n, int k, double p) {
  if (k < 0 || k > n) return 0.0;
  if (p <= 0.0) return k == 0 ? 1.0 : 0.0;
  if (p >= 1.0) return k == n ? 1.0 : 0.0;
  const double lc = std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
  return std::exp(lc + k * std::log(p) + (n - k) * std::log(1.0 - p));
}

inline double approve(const cheaptalk::GameSpec& s, int state, double x) {
  return s.rho[state] * x;
}

// Receiver's favorable over unfavorable payoff-weighted mass at tally t.
inline double receiver_lr(const cheaptalk::GameSpec& s, double x, int n, int t) {
  double num = 0.0, den = 0.0;
  for (int i = 0; i < 3; ++i) {
    const double w = s.prior[i] * std::abs(s.u_receiver[i]) * binom_pmf(n, t, approve(s, i, x));
    (s.u_receiver[i] > 0 ? num : den) += w;
  }
  return num / den;
}

inline int receiver_cutoff(const cheaptalk::GameSpec& s, double x, int n) {
  for (int t = 0; t <= n; ++t) {
    if (receiver_lr(s, x, n, t) >= 1.0) return t;
  }
  return n + 1;
}

// Sender's favorable over unfavorable mass conditional on being pivotal.
inline double sender_lr(const cheaptalk::GameSpec& s, double x, int n, int cutoff, bool high) {
  double num = 0.0, den = 0.0;
  for (int i = 0; i < 3; ++i) {
    const double sig = high ? s.rho[i] : 1.0 - s.rho[i];
    const double w = s.prior[i] * sig * std::abs(s.u_senders[i]) *
                     binom_pmf(n - 1, cutoff - 1, approve(s, i, x));
    (s.u_senders[i] > 0 ? num : den) += w;
  }
  return num / den;
}

inline double p_proposal(const cheaptalk::GameSpec& s, int state, double x, int n, int cutoff) {
  double p = 0.0;
  for (int t = cutoff; t <= n; ++t) p += binom_pmf(n, t, approve(s, state, x));
  return p;
}

struct Welfare {
  double sender = 0.0;
  double receiver = 0.0;
};

inline Welfare welfare(const cheaptalk::GameSpec& s, double x, int n, int cutoff) {
  Welfare w;
  for (int i = 0; i < 3; ++i) {
    const double p = p_proposal(s, i, x, n, cutoff);
    w.sender += s.prior[i] * s.u_senders[i] * p;
    w.receiver += s.prior[i] * s.u_receiver[i] * p;
  }
  return w;
}

struct Root {
  double x = 0.0;
  int cutoff = 0;
};

// Equilibria with x_low = 0 found by scanning x on a uniform grid: sign
// changes of the high-signal indifference inside one cutoff region, plus the
// truthful corner.
inline std::vector<Root> grid_equilibria(const cheaptalk::GameSpec& s, int n, int points) {
  std::vector<Root> roots;
  double prev_x = 0.0, prev_g = 0.0;
  int prev_c = -1;
  for (int k = 1; k <= points; ++k) {
    const double x = static_cast<double>(k) / points;
    const int c = receiver_cutoff(s, x, n);
    double g = 0.0;
    const bool interior = c >= 1 && c <= n;
    if (interior) g = std::log(sender_lr(s, x, n, c, true));
    if (interior && prev_c == c && (prev_g < 0) != (g < 0)) {
      double lo = prev_x, hi = x;
      for (int it = 0; it < 100; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double gm = std::log(sender_lr(s, mid, n, c, true));
        ((gm < 0) == (prev_g < 0) ? lo : hi) = mid;
      }
      const double xr = 0.5 * (lo + hi);
      if (sender_lr(s, xr, n, c, false) < 1.0) roots.push_back({xr, c});
    }
    if (k == points && interior && g >= 0.0 && sender_lr(s, 1.0, n, c, false) <= 1.0) {
      roots.push_back({1.0, c});
    }
    prev_x = x;
    prev_g = g;
    prev_c = interior ? c : -1;
  }
  return roots;
}

}  // namespace oracle

#endif  // CHEAPTALK_TESTS_ORACLE_HPP_
