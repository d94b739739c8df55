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

#include "cheaptalk/asympt.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "cheaptalk/prob.hpp"

namespace cheaptalk {
namespace {

constexpr double kTraceTol = 1e-12;

// -1, 0, +1 for below, on, above the threshold (relative tolerance).
int compare_to_threshold(double ratio, double threshold) {
  const double rel = (ratio - threshold) / threshold;
  if (std::abs(rel) <= kRegimeBoundaryTol) return 0;
  return rel > 0.0 ? 1 : -1;
}

double upper_tail(int n, double a, int cutoff) {
  if (cutoff <= 0) return 1.0;
  if (cutoff > n) return 0.0;
  double log_tail = kNegInf;
  for (int t = cutoff; t <= n; ++t) log_tail = log_add(log_tail, binomial_logpmf(n, t, a).value);
  return std::min(1.0, std::exp(log_tail));
}

double lower_tail(int n, double a, int cutoff) {
  if (cutoff <= 0) return 0.0;
  if (cutoff > n) return 1.0;
  double log_tail = kNegInf;
  for (int t = 0; t < cutoff; ++t) log_tail = log_add(log_tail, binomial_logpmf(n, t, a).value);
  return std::min(1.0, std::exp(log_tail));
}

}  // namespace

const char* to_string(CommonInterestRegime regime) {
  switch (regime) {
    case CommonInterestRegime::babbling_only:
      return "babbling_only";
    case CommonInterestRegime::aggregating:
      return "aggregating";
    case CommonInterestRegime::knife_edge:
      return "knife_edge";
  }
  return "?";
}

const char* to_string(DisagreementRegime regime) {
  switch (regime) {
    case DisagreementRegime::fail:
      return "fail";
    case DisagreementRegime::persist_candidate:
      return "persist_candidate";
    case DisagreementRegime::boundary:
      return "boundary";
  }
  return "?";
}

const char* to_string(SweepParameter parameter) {
  return parameter == SweepParameter::conflict_ratio ? "conflict_ratio" : "q2";
}

double signal_swap_threshold(const GameSpec& spec) {
  require_three_states(spec);
  const auto& r = spec.rho;
  return std::exp(std::log(r[2]) - std::log(r[0]) + std::log1p(-r[0]) -
                  std::log1p(-r[2]));
}

double high_signal_threshold(const GameSpec& spec) {
  require_three_states(spec);
  return spec.rho[2] / spec.rho[0];
}

CommonInterestRegime classify_without_disagreement(const GameSpec& spec) {
  require_three_states(spec);
  if (spec.prior[1] != 0.0) {
    throw std::invalid_argument(
        "common-interest classification requires zero mass on the "
        "disagreement state");
  }
  switch (compare_to_threshold(conflict_profile(spec).ratio,
                               signal_swap_threshold(spec))) {
    case 1:
      return CommonInterestRegime::babbling_only;
    case -1:
      return CommonInterestRegime::aggregating;
    default:
      return CommonInterestRegime::knife_edge;
  }
}

DisagreementRegime classify_with_disagreement(const GameSpec& spec) {
  require_three_states(spec);
  if (!(spec.prior[1] > 0.0)) {
    throw std::invalid_argument(
        "disagreement classification requires positive mass on the "
        "disagreement state");
  }
  switch (compare_to_threshold(conflict_profile(spec).ratio,
                               high_signal_threshold(spec))) {
    case 1:
      return DisagreementRegime::fail;
    case -1:
      return DisagreementRegime::persist_candidate;
    default:
      return DisagreementRegime::boundary;
  }
}

double learning_gap(const GameSpec& spec, double x, int n, int cutoff) {
  require_three_states(spec);
  return upper_tail(n, spec.rho[0] * x, cutoff) +
         lower_tail(n, spec.rho[2] * x, cutoff);
}

LadderPoint ladder_point(const GameSpec& spec, const EquilibriumSet& set) {
  LadderPoint p;
  p.n = set.n;
  p.equilibrium_count = set.equilibria.size();
  p.v_receiver_babbling = set.babbling.receiver;
  p.v_receiver_full = full_information_receiver_welfare(spec);
  if (const Equilibrium* eq = set.max()) {
    p.babbling_only = false;
    p.x_max = eq->x;
    p.cutoff_max = eq->cutoff;
    p.n_x_max = eq->x * set.n;
    p.v_sender_max = eq->v_sender;
    p.v_receiver_max = eq->v_receiver;
    p.learning_gap = learning_gap(spec, eq->x, set.n, eq->cutoff);
  } else {
    p.v_sender_max = set.babbling.sender;
    p.v_receiver_max = set.babbling.receiver;
    p.learning_gap = 1.0;
  }
  const double denom = p.v_receiver_full - p.v_receiver_babbling;
  p.info_index = denom > 0.0 ? (p.v_receiver_max - p.v_receiver_babbling) / denom
                             : std::numeric_limits<double>::quiet_NaN();
  return p;
}

std::vector<LadderPoint> trace_most_informative(const GameSpec& spec,
                                                std::span<const int> ladder,
                                                const SolveOptions& options) {
  std::vector<LadderPoint> out;
  out.reserve(ladder.size());
  for (int n : ladder) out.push_back(ladder_point(spec, solve(spec, n, options)));
  return out;
}

SenderWelfareTrace trace_sender_welfare(std::span<const LadderPoint> points) {
  SenderWelfareTrace out;
  for (const auto& p : points) {
    out.ladder.push_back(p.n);
    out.v_sender_max.push_back(p.v_sender_max);
    out.cutoff_max.push_back(p.cutoff_max);
  }
  const auto& v = out.v_sender_max;
  for (std::size_t k = 0; k + 1 < v.size() && !out.plateau_index; ++k) {
    bool never_exceeded = true;
    for (std::size_t j = k + 1; j < v.size(); ++j) {
      if (v[j] > v[k] + kTraceTol) {
        never_exceeded = false;
        break;
      }
    }
    if (never_exceeded) out.plateau_index = k;
  }
  const auto& c = out.cutoff_max;
  int direction = 0;
  for (std::size_t k = 1; k < c.size(); ++k) {
    const int step = c[k] - c[k - 1];
    if (step == 0) continue;
    const int dir = step > 0 ? 1 : -1;
    if (direction != 0 && dir != direction && std::abs(step) == 1) {
      out.cutoff_alternates = true;
    }
    direction = dir;
  }
  return out;
}

std::optional<NearTruthfulWitness> find_near_truthful_equilibrium(
    const GameSpec& spec, double epsilon, std::span<const int> ladder,
    const SolveOptions& options) {
  for (int n : ladder) {
    const EquilibriumSet set = solve(spec, n, options);
    for (const auto& eq : set.equilibria) {
      if (eq.x >= 1.0 - epsilon) return NearTruthfulWitness{n, eq};
    }
  }
  return std::nullopt;
}

InformationIndex information_index(const GameSpec& spec, int n,
                                   const SolveOptions& options) {
  const LadderPoint p = ladder_point(spec, solve(spec, n, options));
  InformationIndex out;
  out.n = n;
  out.v_receiver_max = p.v_receiver_max;
  out.v_receiver_babbling = p.v_receiver_babbling;
  out.v_receiver_full = p.v_receiver_full;
  out.defined = std::isfinite(p.info_index);
  out.value = out.defined ? p.info_index : 0.0;
  out.note = out.defined
                 ? "limsup proxied by the value at N=" + std::to_string(n)
                 : "undefined: full-information payoff equals babbling payoff";
  return out;
}

GameSpec with_conflict_ratio(const GameSpec& spec, double ratio) {
  require_three_states(spec);
  GameSpec out = spec;
  const auto& us = spec.u_senders;
  out.u_receiver[2] = ratio * spec.u_receiver[0] * us[2] / us[0];
  return out;
}

GameSpec with_disagreement_mass(const GameSpec& spec, double q2) {
  require_three_states(spec);
  if (!(spec.prior[0] > 0.0)) {
    throw std::invalid_argument("base prior must put mass on the low state");
  }
  if (!(q2 >= 0.0 && q2 <= 1.0)) {
    throw std::invalid_argument("disagreement mass must lie in [0, 1]");
  }
  const double w = spec.prior[2] / spec.prior[0];
  GameSpec out = spec;
  const double q1 = (1.0 - q2) / (1.0 + w);
  out.prior = {q1, q2, std::max(0.0, 1.0 - q2 - q1)};
  return out;
}

double SweepResult::max_x_increase() const {
  double worst = 0.0;
  for (std::size_t k = 1; k < rows.size(); ++k) {
    worst = std::max(worst, rows[k].point.x_max - rows[k - 1].point.x_max);
  }
  return worst;
}

SweepResult sweep_most_informative(const GameSpec& base, SweepParameter parameter,
                                   std::span<const double> values, int n,
                                   const SolveOptions& options) {
  SweepResult out;
  out.parameter = parameter;
  out.n = n;
  for (double v : values) {
    const GameSpec spec = validate(parameter == SweepParameter::conflict_ratio
                                       ? with_conflict_ratio(base, v)
                                       : with_disagreement_mass(base, v));
    out.rows.push_back({v, ladder_point(spec, solve(spec, n, options))});
  }
  return out;
}

bool persists_on_ladder(const GameSpec& spec, std::span<const int> ladder,
                        bool* non_monotone, const SolveOptions& options) {
  bool all = true;
  bool failed_before = false;
  bool returned = false;
  for (int n : ladder) {
    const bool exists = has_informative_equilibrium(spec, n, options);
    if (!exists) {
      all = false;
      failed_before = true;
      if (!non_monotone) break;
    } else if (failed_before) {
      returned = true;
    }
  }
  if (non_monotone) *non_monotone = returned;
  return all;
}

QhatEstimate estimate_qhat(const GameSpec& base, std::span<const int> ladder,
                           double tolerance, const SolveOptions& options) {
  if (classify_with_disagreement(with_disagreement_mass(base, 0.5)) !=
      DisagreementRegime::persist_candidate) {
    throw std::invalid_argument(
        "threshold estimation requires a conflict ratio below the "
        "high-signal threshold");
  }
  if (!(tolerance > 0.0)) throw std::invalid_argument("tolerance must be positive");
  QhatEstimate out;
  out.ladder.assign(ladder.begin(), ladder.end());

  auto persists = [&](double q2) {
    bool nm = false;
    const bool ok = persists_on_ladder(with_disagreement_mass(base, q2), ladder, &nm, options);
    out.ladder_non_monotone = out.ladder_non_monotone || nm;
    ++out.evaluations;
    return ok;
  };

  double lo = 0.0;
  double hi = 1.0;
  if (persists(hi)) {
    out.persists_everywhere = true;
    lo = hi;
  } else {
    while (hi - lo > tolerance) {
      const double mid = 0.5 * (lo + hi);
      (persists(mid) ? lo : hi) = mid;
    }
  }
  if (out.ladder_non_monotone) {
    lo = std::max(0.0, lo - tolerance);
    hi = std::min(1.0, hi + tolerance);
  }
  out.q_lo = lo;
  out.q_hi = hi;
  auto raw = [](double s) {
    return s >= 1.0 ? std::numeric_limits<double>::infinity() : s / (1.0 - s);
  };
  out.raw_lo = raw(lo);
  out.raw_hi = raw(hi);
  out.note = std::string(kFiniteNNote) +
             "; persistence proxied by existence at every ladder point";
  return out;
}

}  // namespace cheaptalk
