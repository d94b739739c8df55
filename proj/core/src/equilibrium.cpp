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

#include "cheaptalk/equilibrium.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <sstream>

#include "cheaptalk/bestresp.hpp"
#include "cheaptalk/parallel.hpp"
#include "cheaptalk/prob.hpp"

namespace cheaptalk {
namespace {

constexpr double kWelfareTol = 1e-10;

double safe_log(double v) { return v > 0.0 ? std::log(v) : kNegInf; }

// Scan points on (0, 1]: a uniform family k / m and a geometric family that
// starts at 1e-3 / n so that small-x equilibria (x of order 1/n) are bracketed
// as finely as large-x ones.
std::vector<double> scan_grid(int n, int m) {
  std::vector<double> grid;
  grid.reserve(2 * static_cast<std::size_t>(m));
  for (int k = 1; k <= m; ++k) grid.push_back(static_cast<double>(k) / m);
  const double x_min = 1e-3 / n;
  const double log_span = -std::log(x_min);
  for (int k = 0; k < m; ++k) {
    grid.push_back(x_min * std::exp(log_span * k / (m - 1)));
  }
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  while (!grid.empty() && grid.back() > 1.0) grid.pop_back();
  if (grid.empty() || grid.back() != 1.0) grid.push_back(1.0);
  return grid;
}

// Fast evaluation of log L_S(h) along the scan grid for x_low = 0. The
// binomial coefficient and x^(cutoff-1) cancel between numerator and
// denominator, leaving per-state terms in log(1 - rho_i x).
class HighSignalScan {
 public:
  HighSignalScan(const GameSpec& spec, int n, int grid_points)
      : n_(n), grid_(scan_grid(n, grid_points)) {
    for (int i = 0; i < 3; ++i) {
      log_rho_[i] = std::log(spec.rho[i]);
      log_weight_[i] = safe_log(spec.prior[i] * spec.rho[i] *
                                std::abs(spec.u_senders[i]));
      log_reject_[i].reserve(grid_.size());
      for (double x : grid_) log_reject_[i].push_back(std::log1p(-spec.rho[i] * x));
    }
  }

  const std::vector<double>& grid() const { return grid_; }

  // Values of log L_S(h) at every grid point for `cutoff`.
  std::vector<double> values(int cutoff) const {
    const int rest = n_ - cutoff;
    std::array<double, 3> base{};
    for (int i = 0; i < 3; ++i) base[i] = log_weight_[i] + (cutoff - 1) * log_rho_[i];
    std::vector<double> f(grid_.size());
    for (std::size_t k = 0; k < grid_.size(); ++k) {
      const double num = base[2] + rest * log_reject_[2][k];
      const double den = log_add(base[0] + rest * log_reject_[0][k],
                                 base[1] + rest * log_reject_[1][k]);
      if (num == kNegInf && den == kNegInf) {
        f[k] = 0.0;
      } else {
        f[k] = num - den;
      }
    }
    return f;
  }

 private:
  int n_;
  std::vector<double> grid_;
  std::array<double, 3> log_rho_{};
  std::array<double, 3> log_weight_{};
  std::array<std::vector<double>, 3> log_reject_;
};

double high_ratio(const GameSpec& spec, int n, int cutoff, double x) {
  return sender_ratio(spec, SenderStrategy::on_high(x), n, cutoff, Signal::high);
}

// Bisection for a sign change of log L_S(h) inside [lo, hi].
std::optional<double> refine_root(const GameSpec& spec, int n, int cutoff,
                                  double lo, double hi, double tol) {
  double f_lo = high_ratio(spec, n, cutoff, lo);
  double f_hi = high_ratio(spec, n, cutoff, hi);
  if (std::abs(f_lo) < tol) return lo;
  if (std::abs(f_hi) < tol) return hi;
  if ((f_lo >= 0.0) == (f_hi >= 0.0)) return std::nullopt;
  for (int iter = 0; iter < 200; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double f_mid = high_ratio(spec, n, cutoff, mid);
    if (std::abs(f_mid) < tol) return mid;
    if ((f_mid >= 0.0) == (f_lo >= 0.0)) {
      lo = mid;
      f_lo = f_mid;
    } else {
      hi = mid;
      f_hi = f_mid;
    }
  }
  return std::abs(f_lo) <= std::abs(f_hi) ? lo : hi;
}

std::vector<Equilibrium> solve_cutoff(const GameSpec& spec, int n, int cutoff,
                                      const HighSignalScan& scan,
                                      const SolveOptions& options) {
  const auto& grid = scan.grid();
  const std::vector<double> f = scan.values(cutoff);

  std::vector<double> candidates;
  const double f_one = high_ratio(spec, n, cutoff, 1.0);
  const bool corner = f_one >= -kIndifferenceTol;
  if (corner) candidates.push_back(1.0);

  for (std::size_t k = 0; k + 1 < grid.size(); ++k) {
    if ((f[k] >= 0.0) == (f[k + 1] >= 0.0)) continue;
    auto root = refine_root(spec, n, cutoff, grid[k], grid[k + 1], options.root_tol);
    if (!root) continue;
    // Near-1 roots with an indifferent corner are the corner equilibrium.
    if (corner && std::abs(f_one) <= kIndifferenceTol && 1.0 - *root <= 1e-9) {
      continue;
    }
    if (*root >= 1.0) continue;
    candidates.push_back(*root);
  }

  std::vector<Equilibrium> out;
  for (double x : candidates) {
    const SenderStrategy s = SenderStrategy::on_high(x);
    const double ls_low = sender_ratio(spec, s, n, cutoff, Signal::low);
    if (ls_low > kIndifferenceTol) continue;
    if (receiver_cutoff(spec, s, n) != cutoff) continue;
    Equilibrium eq;
    eq.x = x;
    eq.cutoff = cutoff;
    eq.n = n;
    eq.log_ls_high = x == 1.0 ? f_one : high_ratio(spec, n, cutoff, x);
    eq.log_ls_low = ls_low;
    const Welfare w = welfare(spec, s, n, cutoff);
    eq.v_sender = w.sender;
    eq.v_receiver = w.receiver;
    eq.corner = x == 1.0;
    out.push_back(eq);
  }
  return out;
}

void require_solvable(const GameSpec& spec, int n) {
  require_three_states(spec);
  validate(spec);
  if (n < 1) throw std::invalid_argument("sender count must be at least 1");
}

}  // namespace

const Equilibrium* EquilibriumSet::max() const {
  if (!most_informative) return nullptr;
  return &equilibria[*most_informative];
}

EquilibriumSet solve(const GameSpec& spec, int n, const SolveOptions& options) {
  require_solvable(spec, n);
  const HighSignalScan scan(spec, n, options.grid_points);
  std::vector<std::vector<Equilibrium>> per_cutoff(static_cast<std::size_t>(n));
  parallel_for(per_cutoff.size(), [&](std::size_t i) {
    per_cutoff[i] = solve_cutoff(spec, n, static_cast<int>(i) + 1, scan, options);
  });

  EquilibriumSet set;
  set.n = n;
  set.babbling = babbling_welfare(spec);
  for (const auto& list : per_cutoff) {
    if (list.size() > 1) set.multi_root_cutoffs.push_back(list.front().cutoff);
    set.equilibria.insert(set.equilibria.end(), list.begin(), list.end());
  }
  std::stable_sort(set.equilibria.begin(), set.equilibria.end(),
                   [](const Equilibrium& a, const Equilibrium& b) {
                     return a.x < b.x;
                   });
  if (!set.equilibria.empty()) set.most_informative = set.equilibria.size() - 1;
  return set;
}

bool has_informative_equilibrium(const GameSpec& spec, int n,
                                 const SolveOptions& options) {
  require_solvable(spec, n);
  const HighSignalScan scan(spec, n, options.grid_points);
  for (int cutoff = 1; cutoff <= n; ++cutoff) {
    if (!solve_cutoff(spec, n, cutoff, scan, options).empty()) return true;
  }
  return false;
}

Welfare welfare(const GameSpec& spec, const SenderStrategy& strategy, int n,
                int cutoff) {
  if (cutoff < 0 || cutoff > n + 1) {
    throw std::out_of_range("cutoff outside 0..n+1");
  }
  Welfare w;
  for (std::size_t i = 0; i < spec.num_states(); ++i) {
    if (spec.prior[i] == 0.0) continue;
    const double a = approval_probability(spec.rho[i], strategy);
    double log_tail = kNegInf;
    for (int t = cutoff; t <= n; ++t) {
      log_tail = log_add(log_tail, binomial_logpmf(n, t, a).value);
    }
    const double p = std::min(1.0, std::exp(log_tail));
    w.sender += spec.prior[i] * spec.u_senders[i] * p;
    w.receiver += spec.prior[i] * spec.u_receiver[i] * p;
  }
  return w;
}

std::vector<Welfare> welfare_profile(const GameSpec& spec,
                                     const SenderStrategy& strategy, int n) {
  std::vector<Welfare> out(static_cast<std::size_t>(n) + 2);
  for (std::size_t i = 0; i < spec.num_states(); ++i) {
    if (spec.prior[i] == 0.0) continue;
    const auto tails =
        binomial_log_upper_tails(n, approval_probability(spec.rho[i], strategy));
    for (std::size_t c = 0; c < out.size(); ++c) {
      const double p = std::exp(tails[c]);
      out[c].sender += spec.prior[i] * spec.u_senders[i] * p;
      out[c].receiver += spec.prior[i] * spec.u_receiver[i] * p;
    }
  }
  return out;
}

Welfare babbling_welfare(const GameSpec& spec) {
  Welfare implement;
  for (std::size_t i = 0; i < spec.num_states(); ++i) {
    implement.sender += spec.prior[i] * spec.u_senders[i];
    implement.receiver += spec.prior[i] * spec.u_receiver[i];
  }
  if (implement.receiver >= 0.0) return implement;
  return {};
}

double full_information_receiver_welfare(const GameSpec& spec) {
  double v = 0.0;
  for (std::size_t i = 0; i < spec.num_states(); ++i) {
    v += spec.prior[i] * std::max(0.0, spec.u_receiver[i]);
  }
  return v;
}

CutoffOptimality cutoff_maximizes_sender_welfare(const GameSpec& spec,
                                                 const Equilibrium& eq) {
  const auto profile = welfare_profile(spec, eq.strategy(), eq.n);
  CutoffOptimality out;
  out.sender_welfare.reserve(profile.size());
  double best = -std::numeric_limits<double>::infinity();
  for (std::size_t c = 0; c < profile.size(); ++c) {
    out.sender_welfare.push_back(profile[c].sender);
    if (profile[c].sender > best) {
      best = profile[c].sender;
      out.best_cutoff = static_cast<int>(c);
    }
  }
  const double at_eq = out.sender_welfare[static_cast<std::size_t>(eq.cutoff)];
  out.holds = at_eq >= best - kWelfareTol * (1.0 + std::abs(best));
  return out;
}

double sender_posterior_payoff(const GameSpec& spec,
                               const SenderStrategy& strategy, int n,
                               int tally) {
  const auto post = receiver_posterior(spec, strategy, n, tally);
  double v = 0.0;
  for (std::size_t i = 0; i < post.size(); ++i) v += post[i] * spec.u_senders[i];
  return v;
}

std::vector<WelfareRow> pareto_order(const EquilibriumSet& set) {
  std::vector<WelfareRow> rows;
  rows.push_back({0.0, -1, set.babbling});
  for (const auto& eq : set.equilibria) {
    rows.push_back({eq.x, eq.cutoff, {eq.v_sender, eq.v_receiver}});
  }
  auto fail = [](const WelfareRow& a, const WelfareRow& b, const char* who) {
    std::ostringstream msg;
    msg.precision(17);
    msg << who << " welfare decreases from (x=" << a.x << ", cutoff=" << a.cutoff
        << ", v=" << (who[0] == 's' ? a.welfare.sender : a.welfare.receiver)
        << ") to (x=" << b.x << ", cutoff=" << b.cutoff
        << ", v=" << (who[0] == 's' ? b.welfare.sender : b.welfare.receiver) << ")";
    throw ParetoViolation(msg.str());
  };
  for (std::size_t k = 1; k < rows.size(); ++k) {
    const WelfareRow& prev = rows[k - 1];
    const WelfareRow& cur = rows[k];
    const WelfareRow& base = rows.front();
    if (cur.welfare.sender < base.welfare.sender - kWelfareTol) fail(base, cur, "sender");
    if (cur.welfare.receiver < base.welfare.receiver - kWelfareTol) fail(base, cur, "receiver");
    if (cur.welfare.sender < prev.welfare.sender - kWelfareTol) fail(prev, cur, "sender");
    if (cur.welfare.receiver < prev.welfare.receiver - kWelfareTol) fail(prev, cur, "receiver");
  }
  return rows;
}

std::optional<MixedLowSignalWitness> find_mixed_low_signal_equilibrium(
    const GameSpec& spec, int n, int resolution, double tol) {
  require_solvable(spec, n);
  if (resolution < 2) throw std::invalid_argument("resolution must be >= 2");

  auto check_point = [&](double x_low, double x_high,
                         int cutoff) -> std::optional<MixedLowSignalWitness> {
    const SenderStrategy s{x_low, x_high};
    if (receiver_cutoff(spec, s, n) != cutoff) return std::nullopt;
    const SenderRatio r = sender_ratios(spec, s, n, cutoff);
    const bool high_ok = x_high == 1.0 ? r.log_high >= -tol : std::abs(r.log_high) <= tol;
    const bool low_ok = std::abs(r.log_low) <= tol;
    if (!high_ok || !low_ok) return std::nullopt;
    return MixedLowSignalWitness{s, cutoff, r.log_low, r.log_high};
  };

  for (int h = 2; h <= resolution; ++h) {
    const double x_high = static_cast<double>(h) / resolution;
    int prev_cutoff = -1;
    double prev_low = 0.0;
    double prev_ratio = 0.0;
    for (int l = 1; l < h; ++l) {
      const double x_low = static_cast<double>(l) / resolution;
      const SenderStrategy s{x_low, x_high};
      const int cutoff = receiver_cutoff(spec, s, n);
      if (cutoff < 1 || cutoff > n) {
        prev_cutoff = -1;
        continue;
      }
      const double ratio = sender_ratio(spec, s, n, cutoff, Signal::low);
      if (auto w = check_point(x_low, x_high, cutoff)) return w;
      if (cutoff == prev_cutoff && (ratio >= 0.0) != (prev_ratio >= 0.0)) {
        double lo = prev_low, hi = x_low, f_lo = prev_ratio;
        for (int iter = 0; iter < 100 && hi - lo > 1e-15; ++iter) {
          const double mid = 0.5 * (lo + hi);
          const double f_mid =
              sender_ratio(spec, {mid, x_high}, n, cutoff, Signal::low);
          if ((f_mid >= 0.0) == (f_lo >= 0.0)) {
            lo = mid;
            f_lo = f_mid;
          } else {
            hi = mid;
          }
        }
        if (auto w = check_point(0.5 * (lo + hi), x_high, cutoff)) return w;
      }
      prev_cutoff = cutoff;
      prev_low = x_low;
      prev_ratio = ratio;
    }
  }
  return std::nullopt;
}

}  // namespace cheaptalk
