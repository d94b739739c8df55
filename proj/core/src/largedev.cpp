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

#include "cheaptalk/largedev.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "cheaptalk/parallel.hpp"
#include "cheaptalk/prob.hpp"

namespace cheaptalk {
namespace {

constexpr double kStochasticTol = 1e-12;

void require_stochastic_rows(const Matrix& m, const char* what) {
  if (m.empty() || m.front().empty()) {
    throw std::invalid_argument(std::string(what) + " must be non-empty");
  }
  for (const auto& row : m) {
    if (row.size() != m.front().size()) {
      throw std::invalid_argument(std::string(what) + " rows differ in length");
    }
    double sum = 0.0;
    for (double v : row) {
      if (!(v >= 0.0) || !std::isfinite(v)) {
        throw std::invalid_argument(std::string(what) + " has a negative entry");
      }
      sum += v;
    }
    if (std::abs(sum - 1.0) > kStochasticTol) {
      throw std::invalid_argument(std::string(what) + " row does not sum to 1");
    }
  }
}

double log_or_neg_inf(double v) { return v > 0.0 ? std::log(v) : kNegInf; }

std::vector<double> frequency(std::span<const int> tally) {
  int total = 0;
  for (int t : tally) total += t;
  std::vector<double> f(tally.size());
  for (std::size_t k = 0; k < tally.size(); ++k) {
    f[k] = total > 0 ? static_cast<double>(tally[k]) / total : 0.0;
  }
  return f;
}

void lattice_rec(int k, int remaining, std::vector<int>& current,
                 std::vector<std::vector<int>>& out) {
  if (static_cast<int>(current.size()) == k - 1) {
    current.push_back(remaining);
    out.push_back(current);
    current.pop_back();
    return;
  }
  for (int v = 0; v <= remaining; ++v) {
    current.push_back(v);
    lattice_rec(k, remaining - v, current, out);
    current.pop_back();
  }
}

}  // namespace

bool is_tp2(const Matrix& m, double tol) {
  for (std::size_t r = 0; r < m.size(); ++r) {
    for (std::size_t r2 = r + 1; r2 < m.size(); ++r2) {
      for (std::size_t c = 0; c < m[r].size(); ++c) {
        for (std::size_t c2 = c + 1; c2 < m[r].size(); ++c2) {
          if (m[r2][c] * m[r][c2] > m[r][c] * m[r2][c2] + tol) return false;
        }
      }
    }
  }
  return true;
}

MonotoneStrategyMatrix make_strategy_matrix(Matrix p) {
  require_stochastic_rows(p, "strategy matrix");
  if (!is_tp2(p)) {
    throw std::invalid_argument(
        "strategy matrix is not monotone: higher signals must make higher "
        "messages relatively more likely");
  }
  for (std::size_t k = 0; k < p.front().size(); ++k) {
    double col = 0.0;
    for (const auto& row : p) col += row[k];
    if (!(col > 0.0)) {
      throw std::invalid_argument("message " + std::to_string(k) + " is never sent");
    }
  }
  return MonotoneStrategyMatrix{std::move(p)};
}

MessageModel make_message_model(Matrix signal_kernel, MonotoneStrategyMatrix strategy,
                                double floor) {
  require_stochastic_rows(signal_kernel, "signal kernel");
  if (signal_kernel.front().size() != strategy.signals()) {
    throw std::invalid_argument("signal kernel and strategy disagree on signal count");
  }
  if (!(floor > 0.0)) throw std::invalid_argument("signal floor must be positive");
  for (const auto& row : signal_kernel) {
    for (double v : row) {
      if (v < floor) {
        throw std::invalid_argument("signal kernel entry below the floor " +
                                    std::to_string(floor));
      }
    }
  }
  if (!is_tp2(signal_kernel)) {
    throw std::invalid_argument("signal kernel lacks monotone likelihood ratios");
  }
  MessageModel m;
  m.floor = floor;
  m.g.assign(signal_kernel.size(), std::vector<double>(strategy.messages(), 0.0));
  for (std::size_t i = 0; i < signal_kernel.size(); ++i) {
    for (std::size_t j = 0; j < strategy.signals(); ++j) {
      for (std::size_t k = 0; k < strategy.messages(); ++k) {
        m.g[i][k] += signal_kernel[i][j] * strategy.p[j][k];
      }
    }
  }
  if (!is_tp2(m.g)) {
    throw std::logic_error("induced message distributions lack monotone likelihood ratios");
  }
  m.signal_kernel = std::move(signal_kernel);
  m.strategy = std::move(strategy);
  return m;
}

MessageModel default_message_model() {
  return make_message_model({{0.6, 0.3, 0.1}, {0.3, 0.4, 0.3}, {0.1, 0.3, 0.6}},
                            make_strategy_matrix({{0.8, 0.15, 0.05},
                                                  {0.3, 0.4, 0.3},
                                                  {0.05, 0.15, 0.8}}));
}

MessageModel binary_message_model(const GameSpec& spec, double x) {
  Matrix kernel;
  double floor = 1.0;
  for (double r : spec.rho) {
    kernel.push_back({1.0 - r, r});
    floor = std::min({floor, r, 1.0 - r});
  }
  return make_message_model(std::move(kernel),
                            make_strategy_matrix({{1.0, 0.0}, {1.0 - x, x}}), floor);
}

double multinomial_logpmf(std::span<const int> tally, std::span<const double> g) {
  if (tally.size() != g.size()) throw std::invalid_argument("tally/distribution size mismatch");
  int n = 0;
  double out = 0.0;
  int sign = 0;
  for (std::size_t k = 0; k < tally.size(); ++k) {
    if (tally[k] < 0) throw std::invalid_argument("negative tally entry");
    n += tally[k];
    if (tally[k] == 0) continue;
    if (!(g[k] > 0.0)) return kNegInf;
    out += tally[k] * std::log(g[k]) - ::lgamma_r(tally[k] + 1.0, &sign);
  }
  return out + ::lgamma_r(n + 1.0, &sign);
}

double tally_log_ratio_via_kl(const MessageModel& model, std::span<const int> tally,
                              int i, int j) {
  int n = 0;
  for (int t : tally) n += t;
  const std::vector<double> f = frequency(tally);
  return n * (kl_categorical(f, model.g.at(j)) - kl_categorical(f, model.g.at(i)));
}

std::vector<std::vector<int>> simplex_lattice(int k, int n) {
  if (k < 1 || n < 0) throw std::invalid_argument("simplex_lattice needs k >= 1, n >= 0");
  std::vector<std::vector<int>> out;
  std::vector<int> current;
  lattice_rec(k, n, current, out);
  return out;
}

ReceiverRule::ReceiverRule(const GameSpec& spec, const MessageModel& model) {
  if (model.states() != spec.num_states()) {
    throw std::invalid_argument("message model and game disagree on state count");
  }
  if (model.messages() < 2) throw std::invalid_argument("need at least two messages");
  for (std::size_t i = 0; i < spec.num_states(); ++i) {
    const double u = spec.u_receiver[i];
    log_weight_.push_back(spec.prior[i] > 0.0 && u != 0.0
                              ? std::log(spec.prior[i]) + std::log(std::abs(u))
                              : kNegInf);
    sign_.push_back(u > 0.0 ? 1 : (u < 0.0 ? -1 : 0));
    std::vector<double> row;
    for (double g : model.g[i]) row.push_back(log_or_neg_inf(g));
    log_g_.push_back(std::move(row));
  }
}

double ReceiverRule::log_odds(std::span<const int> tally) const {
  double gain = kNegInf, loss = kNegInf;
  for (std::size_t i = 0; i < log_weight_.size(); ++i) {
    if (sign_[i] == 0 || log_weight_[i] == kNegInf) continue;
    double w = log_weight_[i];
    for (std::size_t k = 0; k < tally.size(); ++k) {
      if (tally[k] > 0) w += tally[k] * log_g_[i][k];
    }
    if (sign_[i] > 0) {
      gain = log_add(gain, w);
    } else {
      loss = log_add(loss, w);
    }
  }
  if (gain == kNegInf && loss == kNegInf) return 0.0;
  return gain - loss;
}

MonotonicityReport check_rule_monotone(const GameSpec& spec, const MessageModel& model,
                                       int n) {
  const ReceiverRule rule(spec, model);
  const int k = static_cast<int>(model.messages());
  MonotonicityReport out;
  for (auto& t : simplex_lattice(k, n)) {
    const bool base = rule.proposal(t);
    for (int m = 0; m + 1 < k; ++m) {
      if (t[m] == 0) continue;
      --t[m];
      ++t[m + 1];
      ++out.pairs_checked;
      const bool moved = rule.proposal(t);
      ++t[m];
      --t[m + 1];
      if (base && !moved) {
        out.holds = false;
        if (!out.counterexample) out.counterexample = t;
      }
    }
  }
  return out;
}

PivotalSet pivotal_set(const GameSpec& spec, const MessageModel& model, int n) {
  if (model.states() != 3 || model.messages() != 3) {
    throw std::invalid_argument("pivotal_set requires three states and three messages");
  }
  if (n < 2) throw std::invalid_argument("pivotal_set requires n >= 2");
  const ReceiverRule rule(spec, model);
  const int m = n - 1;

  struct Part {
    std::vector<Tally3> members;
    std::vector<std::array<double, 3>> logp;
    std::array<double, 3> total{kNegInf, kNegInf, kNegInf};
  };
  std::vector<Part> parts(static_cast<std::size_t>(m) + 1);
  parallel_for(parts.size(), [&](std::size_t idx) {
    const int a = static_cast<int>(idx);
    Part& part = parts[idx];
    for (int b = 0; a + b <= m; ++b) {
      const Tally3 t{a, b, m - a - b};
      const Tally3 lo{a + 1, b, m - a - b};
      const Tally3 hi{a, b, m - a - b + 1};
      if (rule.proposal(lo) == rule.proposal(hi)) continue;
      std::array<double, 3> lp{};
      for (int i = 0; i < 3; ++i) {
        lp[i] = multinomial_logpmf(t, model.g[i]);
        part.total[i] = log_add(part.total[i], lp[i]);
      }
      part.members.push_back(t);
      part.logp.push_back(lp);
    }
  });

  PivotalSet out;
  out.n = n;
  out.lattice_size = static_cast<std::size_t>(m + 1) * (m + 2) / 2;
  out.log_prob = {kNegInf, kNegInf, kNegInf};
  for (auto& part : parts) {
    out.members.insert(out.members.end(), part.members.begin(), part.members.end());
    out.member_log_prob.insert(out.member_log_prob.end(), part.logp.begin(),
                               part.logp.end());
    for (int i = 0; i < 3; ++i) out.log_prob[i] = log_add(out.log_prob[i], part.total[i]);
  }
  return out;
}

double ball_mass_fraction(const PivotalSet& set, std::span<const double> center,
                          double radius, int state) {
  if (set.empty()) return 0.0;
  const double m = set.n - 1;
  double inside = kNegInf;
  for (std::size_t s = 0; s < set.members.size(); ++s) {
    double d2 = 0.0;
    for (int k = 0; k < 3; ++k) {
      const double d = set.members[s][k] / m - center[k];
      d2 += d * d;
    }
    if (d2 < radius * radius) inside = log_add(inside, set.member_log_prob[s][state]);
  }
  return inside == kNegInf ? 0.0 : std::exp(inside - set.log_prob[state]);
}

FrequencyContainment check_frequency_containment(const MessageModel& model,
                                                 const PivotalSet& set, double epsilon) {
  FrequencyContainment out;
  out.epsilon = epsilon;
  for (const auto& t : set.members) {
    const std::vector<double> f = frequency(t);
    const double gap =
        std::abs(kl_categorical(f, model.g[0]) -
                 std::min(kl_categorical(f, model.g[1]), kl_categorical(f, model.g[2])));
    out.max_gap = std::max(out.max_gap, gap);
    if (!(gap < epsilon)) ++out.outside;
  }
  return out;
}

ChernoffPoint chernoff_point(std::span<const double> g_i, std::span<const double> g_j) {
  if (g_i.size() != g_j.size() || g_i.size() < 2) {
    throw std::invalid_argument("chernoff_point needs two distributions of equal size >= 2");
  }
  const std::size_t k = g_i.size();
  std::vector<double> log_i(k), c(k);
  for (std::size_t m = 0; m < k; ++m) {
    if (!(g_i[m] > 0.0) || !(g_j[m] > 0.0)) {
      throw std::invalid_argument("chernoff_point needs interior distributions");
    }
    log_i[m] = std::log(g_i[m]);
    c[m] = std::log(g_j[m]) - log_i[m];
  }
  ChernoffPoint out;
  if (std::equal(g_i.begin(), g_i.end(), g_j.begin())) {
    out.gamma_star.assign(g_i.begin(), g_i.end());
    out.degenerate = true;
    return out;
  }
  auto tilted = [&](double lambda) {
    std::vector<double> w(k);
    double mx = kNegInf;
    for (std::size_t m = 0; m < k; ++m) {
      w[m] = log_i[m] + lambda * c[m];
      mx = std::max(mx, w[m]);
    }
    double z = 0.0;
    for (auto& v : w) z += (v = std::exp(v - mx));
    for (auto& v : w) v /= z;
    return w;
  };
  // KL(., G_i) - KL(., G_j) is linear: sum_k gamma_k c_k, increasing in lambda.
  auto constraint = [&](const std::vector<double>& gamma) {
    double s = 0.0;
    for (std::size_t m = 0; m < k; ++m) s += gamma[m] * c[m];
    return s;
  };
  double lo = 0.0, hi = 1.0;
  double lambda = 0.5;
  std::vector<double> gamma = tilted(lambda);
  double r = constraint(gamma);
  for (int it = 0; it < 200 && std::abs(r) >= kChernoffTol * 1e-2; ++it) {
    (r < 0.0 ? lo : hi) = lambda;
    const double next = 0.5 * (lo + hi);
    if (next == lambda) break;
    lambda = next;
    gamma = tilted(lambda);
    r = constraint(gamma);
  }
  out.gamma_star = std::move(gamma);
  out.tilt = lambda;
  out.residual = r;
  out.rate = kl_categorical(out.gamma_star, g_i);
  return out;
}

RateOrdering mlrp_rate_ordering(const MessageModel& model) {
  if (model.states() != 3) throw std::invalid_argument("rate ordering needs three states");
  const auto& g = model.g;
  const ChernoffPoint p12 = chernoff_point(g[0], g[1]);
  const ChernoffPoint p13 = chernoff_point(g[0], g[2]);
  RateOrdering out;
  out.low_mid_rate = p12.rate;
  out.low_high_rate = p13.rate;
  out.low_mid_at_mid = kl_categorical(p12.gamma_star, g[1]);
  out.low_mid_at_high = kl_categorical(p12.gamma_star, g[2]);
  out.first_holds = out.low_mid_rate < out.low_high_rate;
  out.second_holds = out.low_mid_at_mid < out.low_mid_at_high;
  auto rel_gap = [](double a, double b) {
    return std::abs(b - a) / std::max({std::abs(a), std::abs(b), 1e-300});
  };
  out.near_degenerate = rel_gap(out.low_mid_rate, out.low_high_rate) < 1e-6 ||
                        rel_gap(out.low_mid_at_mid, out.low_mid_at_high) < 1e-6;
  return out;
}

LinearFit fit_line(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw std::invalid_argument("fit_line needs two or more paired points");
  }
  const double n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  LinearFit fit;
  fit.slope = sxx > 0.0 ? sxy / sxx : 0.0;
  fit.intercept = my - fit.slope * mx;
  fit.r2 = (sxx > 0.0 && syy > 0.0) ? (sxy * sxy) / (sxx * syy) : 0.0;
  return fit;
}

DecayTrace pivotal_decay_trace(const GameSpec& spec, const MessageModel& model,
                               std::span<const int> ladder, double radius) {
  DecayTrace out;
  out.radius = radius;
  out.center = chernoff_point(model.g[0], model.g[1]).gamma_star;
  std::vector<double> xs, y31, y32;
  for (int n : ladder) {
    const PivotalSet set = pivotal_set(spec, model, n);
    DecayRow row;
    row.n = n;
    row.pivotal_count = set.members.size();
    if (set.empty()) {
      row.skipped = true;
    } else {
      row.log_ratio_31 = set.log_prob[2] - set.log_prob[0];
      row.log_ratio_32 = set.log_prob[2] - set.log_prob[1];
      row.mass_in_ball = ball_mass_fraction(set, out.center, radius, 0);
      xs.push_back(n);
      y31.push_back(row.log_ratio_31);
      y32.push_back(row.log_ratio_32);
    }
    out.rows.push_back(row);
  }
  if (xs.size() >= 2) {
    out.fit_31 = fit_line(xs, y31);
    out.fit_32 = fit_line(xs, y32);
  }
  return out;
}

}  // namespace cheaptalk
