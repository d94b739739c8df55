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

#include "cheaptalk/cli/suite.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <random>
#include <sstream>

#include "cheaptalk/asympt.hpp"
#include "cheaptalk/bestresp.hpp"
#include "cheaptalk/cli/commands.hpp"
#include "cheaptalk/cli/random_game.hpp"
#include "cheaptalk/equilibrium.hpp"
#include "cheaptalk/largedev.hpp"
#include "cheaptalk/mc.hpp"
#include "cheaptalk/mechanism.hpp"
#include "cheaptalk/parallel.hpp"
#include "cheaptalk/prob.hpp"

namespace cheaptalk::cli {
namespace {

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

GameSpec family(const SuiteOptions& o, double t, double q2) {
  const auto& r = o.baseline.rho;
  if (r.size() == 3) return GameSpec::illustrative(t, q2, {r[0], r[1], r[2]});
  return GameSpec::illustrative(t, q2);
}

struct Check {
  bool pass = true;
  std::ostringstream detail;
  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << "FAILED " << what << "; ";
    }
  }
};

// Probability identities on random draws.
void probability_identities(const SuiteOptions& o, Check& c) {
  std::mt19937_64 rng(o.seed + 1);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  double err_ratio = 0.0, err_multi = 0.0, err_sub = 0.0;
  for (int draw = 0; draw < 10000; ++draw) {
    const GameSpec spec = random_game(rng, {0.0, 0.5, 3.0});
    const int n = 1 + static_cast<int>(rng() % 2000);
    const int t = static_cast<int>(rng() % (n + 1));
    const double x = 0.01 + 0.99 * unit(rng);
    const int i = static_cast<int>(rng() % 3);
    const int j = (i + 1 + static_cast<int>(rng() % 2)) % 3;
    const SenderStrategy s = SenderStrategy::on_high(x);

    const double direct =
        tally_logpmf(spec, s, n, t, i).value - tally_logpmf(spec, s, n, t, j).value;
    err_ratio = std::max(err_ratio, std::abs(direct - tally_ratio_via_kl(spec, s, n, t, i, j)));

    const MessageModel model = random_mlrp_model(rng);
    const int m = 1 + static_cast<int>(rng() % 2000);
    const int t1 = static_cast<int>(rng() % (m + 1));
    const int t2 = static_cast<int>(rng() % (m - t1 + 1));
    const std::vector<int> tally{t1, t2, m - t1 - t2};
    const double multi = multinomial_logpmf(tally, model.g[i]) -
                         multinomial_logpmf(tally, model.g[j]);
    err_multi = std::max(err_multi, std::abs(multi - tally_log_ratio_via_kl(model, tally, i, j)));

    // Approving (rejecting) pivotal mass equals the tally at (one below) the
    // cutoff, up to the common binomial factor.
    const int cutoff = 1 + static_cast<int>(rng() % n);
    const double ai = approval_probability(spec.rho[i], s);
    const double aj = approval_probability(spec.rho[j], s);
    const double piv = pivot_logpmf(spec, s, n, cutoff, i).value -
                       pivot_logpmf(spec, s, n, cutoff, j).value;
    const double at_cutoff = tally_logpmf(spec, s, n, cutoff, i).value -
                             tally_logpmf(spec, s, n, cutoff, j).value;
    const double below = tally_logpmf(spec, s, n, cutoff - 1, i).value -
                         tally_logpmf(spec, s, n, cutoff - 1, j).value;
    err_sub = std::max(err_sub, std::abs(std::log(ai / aj) + piv - at_cutoff));
    err_sub = std::max(err_sub, std::abs(std::log1p(-ai) - std::log1p(-aj) + piv - below));
  }
  c.detail << "10000 draws: binary ratio err " << num(err_ratio) << ", multinomial ratio err "
           << num(err_multi) << ", pivot substitution log err " << num(err_sub);
  c.require(err_ratio <= 1e-9, "binary tally ratio identity");
  c.require(err_multi <= 1e-9, "multinomial tally ratio identity");
  c.require(err_sub <= 1e-10, "pivot substitution identities");
}

void no_mixed_low_signal(const SuiteOptions& o, Check& c) {
  std::mt19937_64 rng(o.seed + 2);
  int searched = 0, found = 0;
  for (int k = 0; k < 20; ++k) {
    const GameSpec spec = random_game(rng, {0.0, 0.3, 1.5});
    for (int n = 1; n <= 5; ++n) {
      ++searched;
      if (find_mixed_low_signal_equilibrium(spec, n, 200)) ++found;
    }
  }
  c.detail << searched << " (spec, N) searches on a 200x200 grid with bisection, " << found
           << " equilibria with x_low > 0";
  c.require(found == 0, "no informative equilibrium with x_low > 0");
}

void cutoff_and_pareto(const SuiteOptions& o, Check& c) {
  std::mt19937_64 rng(o.seed + 3);
  int equilibria = 0, cutoff_bad = 0, pareto_bad = 0, informative_instances = 0;
  for (int k = 0; k < 100; ++k) {
    const GameSpec spec = random_game(rng, {0.0, 0.2, 1.5});
    const int n = 5 + static_cast<int>(rng() % 96);
    const EquilibriumSet set = solve(spec, n);
    if (!set.babbling_only()) ++informative_instances;
    for (const auto& eq : set.equilibria) {
      ++equilibria;
      if (!cutoff_maximizes_sender_welfare(spec, eq).holds) ++cutoff_bad;
    }
    try {
      pareto_order(set);
    } catch (const ParetoViolation&) {
      ++pareto_bad;
    }
  }
  c.detail << "100 instances (" << informative_instances << " with informative equilibria, "
           << equilibria << " equilibria): cutoff not sender-optimal " << cutoff_bad
           << ", Pareto violations " << pareto_bad;
  c.require(equilibria > 0, "sweep contains equilibria");
  c.require(cutoff_bad == 0, "cutoff maximizes sender welfare");
  c.require(pareto_bad == 0, "welfare Pareto-ordered in x");
}

void common_interest(const SuiteOptions& o, Check& c) {
  const GameSpec wide = family(o, 20.0, 0.0);
  const GameSpec narrow = family(o, 8.0, 0.0);
  c.require(classify_without_disagreement(wide) == CommonInterestRegime::babbling_only,
            "t=20 classified babbling-only");
  c.require(classify_without_disagreement(narrow) == CommonInterestRegime::aggregating,
            "t=8 classified aggregating");
  int nonempty = 0;
  for (int n = 1; n <= 500; ++n) {
    if (has_informative_equilibrium(wide, n)) ++nonempty;
  }
  const std::vector<int> ladder{10, 20, 50, 100, 200, 500, 1000, 2000};
  const auto w = find_near_truthful_equilibrium(narrow, 0.1, ladder);
  c.detail << "t=20: informative equilibria at " << nonempty << " of N=1..500; t=8: ";
  if (w) {
    c.detail << "witness x=" << num(w->equilibrium.x) << " cutoff " << w->equilibrium.cutoff
             << " at N=" << w->n;
  } else {
    c.detail << "no witness up to N=2000";
  }
  c.require(nonempty == 0, "t=20 babbling only for N<=500");
  c.require(w.has_value() && w->equilibrium.x >= 0.9, "t=8 witness with x>=0.9");
}

void discontinuity(const SuiteOptions& o, Check& c) {
  const GameSpec spec = family(o, 8.0, 0.01);
  c.require(classify_with_disagreement(spec) == DisagreementRegime::fail,
            "t=8 classified fail with disagreement");
  int nonempty = 0;
  for (int n : {200, 400, 800, 1600, 2000}) {
    if (has_informative_equilibrium(spec, n)) {
      ++nonempty;
      c.detail << "equilibrium at N=" << n << "; ";
    }
  }
  c.detail << "t=8, q2=0.01: informative equilibria at " << nonempty
           << " of N in {200,400,800,1600,2000}";
  c.require(nonempty == 0, "empty solve on the ladder");
}

std::vector<LadderPoint> baseline_trace(const SuiteOptions& o) {
  return trace_most_informative(o.baseline, default_ladder());
}

void vanishing_transmission(const SuiteOptions& o, Check& c) {
  const auto trace = baseline_trace(o);
  auto at = [&](int n) -> const LadderPoint& {
    return *std::find_if(trace.begin(), trace.end(), [&](const auto& p) { return p.n == n; });
  };
  const double x100 = at(100).x_max, x1600 = at(1600).x_max;
  double nx_lo = std::numeric_limits<double>::infinity(), nx_hi = 0.0;
  int c_lo = std::numeric_limits<int>::max(), c_hi = 0;
  bool informative = true;
  for (int n : {200, 400, 800, 1600}) {
    const auto& p = at(n);
    informative = informative && !p.babbling_only;
    nx_lo = std::min(nx_lo, p.n_x_max);
    nx_hi = std::max(nx_hi, p.n_x_max);
    c_lo = std::min(c_lo, p.cutoff_max);
    c_hi = std::max(c_hi, p.cutoff_max);
  }
  double gap_min = 1.0;
  for (const auto& p : trace) gap_min = std::min(gap_min, p.learning_gap);
  c.detail << "x_max(100)=" << num(x100) << ", x_max(1600)=" << num(x1600) << ", N*x_max in ["
           << num(nx_lo) << "," << num(nx_hi) << "], cutoff in [" << c_lo << "," << c_hi
           << "], min learning gap " << num(gap_min);
  c.require(x1600 < x100 / 4.0, "x_max(1600) < x_max(100)/4");
  c.require(informative && nx_hi < 10.0 * nx_lo, "N*x_max within a factor 10");
  c.require(informative && c_hi < 10 * c_lo, "cutoff within a factor 10");
  c.require(gap_min >= 1e-3, "learning gap >= 1e-3");
}

// Direct cross-multiplied comparisons; returns -1, 0, 1 (0 near the boundary).
int direct_side(double lhs, double rhs) {
  const double rel = (lhs - rhs) / std::max(std::abs(lhs), std::abs(rhs));
  if (std::abs(rel) < 1e-9) return 0;
  return lhs > rhs ? 1 : -1;
}

void disagreement_threshold(const SuiteOptions& o, Check& c) {
  std::mt19937_64 rng(o.seed + 7);
  int mismatches = 0;
  for (int k = 0; k < 1000; ++k) {
    const GameSpec spec = random_game(rng, {0.01, 0.5, 6.0});
    const auto& us = spec.u_senders;
    const auto& ur = spec.u_receiver;
    const auto& r = spec.rho;
    // (-U_S1) U_R3 rho_1 versus rho_3 U_S3 (-U_R1).
    const int side = direct_side(-us[0] * ur[2] * r[0], r[2] * us[2] * -ur[0]);
    const DisagreementRegime got = classify_with_disagreement(spec);
    if (side > 0 && got != DisagreementRegime::fail) ++mismatches;
    if (side < 0 && got != DisagreementRegime::persist_candidate) ++mismatches;

    GameSpec common = spec;
    common.prior = {spec.prior[0] / (1.0 - spec.prior[1]), 0.0, 0.0};
    common.prior[2] = 1.0 - common.prior[0];
    const int side0 = direct_side(-us[0] * ur[2] * r[0] * (1.0 - r[2]),
                                  r[2] * (1.0 - r[0]) * us[2] * -ur[0]);
    const CommonInterestRegime got0 = classify_without_disagreement(common);
    if (side0 > 0 && got0 != CommonInterestRegime::babbling_only) ++mismatches;
    if (side0 < 0 && got0 != CommonInterestRegime::aggregating) ++mismatches;
  }
  c.detail << "classification mismatches on 1000 random specs: " << mismatches << "; ";
  c.require(mismatches == 0, "regime classification matches direct evaluation");

  const auto& ladder = default_ladder();
  auto fails_from_some_point = [&](const GameSpec& spec, int* from) {
    *from = -1;
    for (int i = static_cast<int>(ladder.size()) - 1; i >= 0; --i) {
      if (has_informative_equilibrium(spec, ladder[i])) break;
      *from = ladder[i];
    }
    return *from > 0;
  };
  double previous = std::numeric_limits<double>::infinity();
  bool nonincreasing = true;
  for (double t : {1.0, 1.2, 1.6, 2.0, 3.0}) {
    const GameSpec base = family(o, t, 0.1);
    const QhatEstimate e = estimate_qhat(base, ladder, 1e-3);
    const bool below = persists_on_ladder(with_disagreement_mass(base, 0.5 * e.q_lo), ladder);
    int from = -1;
    const bool above =
        fails_from_some_point(with_disagreement_mass(base, std::min(1.0, 2.0 * e.q_hi)), &from);
    c.detail << "t=" << num(t) << ": q in [" << num(e.q_lo) << "," << num(e.q_hi)
             << "] (raw [" << num(e.raw_lo) << "," << num(e.raw_hi) << "])"
             << (below ? "" : " no-persist-below") << (above ? "" : " no-fail-above")
             << "; ";
    c.require(below, "equilibria at q_lo/2 on every probe N (t=" + num(t) + ")");
    c.require(above, "no equilibria beyond some N at 2*q_hi (t=" + num(t) + ")");
    if (t == 1.0) {
      c.require(e.q_lo > 0.0, "positive threshold at identical payoffs");
      continue;
    }
    nonincreasing = nonincreasing && e.estimate() <= previous;
    previous = e.estimate();
  }
  c.require(nonincreasing, "threshold estimate nonincreasing in t over {1.2,1.6,2,3}");
}

void comparative_statics(const SuiteOptions& o, Check& c) {
  const int n = 200;
  const std::vector<double> ratios{1.0, 1.2, 1.6, 2.0, 2.5, 3.0, 3.5, 3.9};
  const std::vector<double> masses{0.0, 0.02, 0.05, 0.1, 0.15, 0.2, 0.3};
  const GameSpec base = family(o, 2.0, 0.1);
  const SweepResult by_ratio =
      sweep_most_informative(base, SweepParameter::conflict_ratio, ratios, n);
  const SweepResult by_mass =
      sweep_most_informative(base, SweepParameter::disagreement_mass, masses, n);
  c.detail << "largest x_max increase: conflict sweep " << num(by_ratio.max_x_increase())
           << ", q2 sweep " << num(by_mass.max_x_increase()) << "; ";
  c.require(by_ratio.max_x_increase() <= 0.0, "x_max nonincreasing in the conflict ratio");
  c.require(by_mass.max_x_increase() <= 0.0, "x_max nonincreasing in q2");

  const auto trace = baseline_trace(o);
  const SenderWelfareTrace sw = trace_sender_welfare(trace);
  c.detail << "sender welfare plateau at "
           << (sw.plateau_index ? "N=" + std::to_string(trace[*sw.plateau_index].n)
                                : std::string("none"))
           << (sw.cutoff_alternates ? " (cutoff alternates)" : "") << "; ";
  c.require(sw.plateau_index.has_value(), "sender welfare has a never-exceeded ladder point");

  const InformationIndex babble = information_index(family(o, 20.0, 0.0), 800);
  c.require(babble.defined && babble.value == 0.0, "index 0 on a babbling-only spec");
  double previous = std::numeric_limits<double>::infinity();
  bool in_range = true, nonincreasing = true;
  c.detail << "index at N=800:";
  for (double r : ratios) {
    const InformationIndex idx = information_index(with_conflict_ratio(base, r), 800);
    c.detail << ' ' << num(idx.value);
    in_range = in_range && idx.defined && idx.value >= 0.0 && idx.value <= 1.0;
    nonincreasing = nonincreasing && idx.value <= previous;
    previous = idx.value;
  }
  c.require(in_range, "index within [0,1]");
  c.require(nonincreasing, "index nonincreasing in t");
}

void randomized_mechanism(const SuiteOptions& o, Check& c) {
  const std::vector<int> ladder{250, 500, 1000, 2000};
  const MechanismLadder m = randomized_mechanism_ladder(o.baseline, ladder);
  bool ic = true, mu_up = true, probs_up = true;
  double worst_residual = 0.0;
  for (std::size_t k = 0; k < m.rows.size(); ++k) {
    const auto& r = m.rows[k];
    if (r.n >= 500) ic = ic && r.ic;
    worst_residual = std::max(worst_residual, std::abs(r.balance_residual));
    if (k > 0) {
      const auto& p = m.rows[k - 1];
      mu_up = mu_up && r.mu > p.mu;
      probs_up = probs_up && r.p_sq_low > p.p_sq_low && r.p_prop_mid > p.p_prop_mid &&
                 r.p_prop_high > p.p_prop_high;
    }
  }
  const auto& top = m.rows.back();
  c.detail << "t_alpha=" << num(m.shares.t_alpha) << " t_beta=" << num(m.shares.t_beta)
           << "; N=2000: mu=" << num(top.mu) << " P[sq|1]=" << num(top.p_sq_low)
           << " P[prop|2]=" << num(top.p_prop_mid) << " P[prop|3]=" << num(top.p_prop_high)
           << "; worst balance residual " << num(worst_residual);
  c.require(ic, "incentive compatible for N>=500");
  c.require(mu_up && top.mu >= 0.99, "mu increasing with mu(2000)>=0.99");
  c.require(top.p_sq_low >= 0.95 && top.p_prop_mid >= 0.95 && top.p_prop_high >= 0.95,
            "first-best probabilities >= 0.95 at N=2000");
  c.require(probs_up, "first-best probabilities increasing");
  c.require(worst_residual < 1e-12, "balance residual < 1e-12");
}

// Minimizes KL(., g_i) over the equal-divergence segment of the 3-simplex on
// a uniform grid.
std::vector<double> grid_chernoff(const std::vector<double>& gi, const std::vector<double>& gj,
                                  int points) {
  std::array<double, 3> cc{};
  for (int k = 0; k < 3; ++k) cc[k] = std::log(gj[k] / gi[k]);
  // u*cc0 + v*cc1 + (1-u-v)*cc2 = 0  =>  v = (-cc2 - u (cc0 - cc2)) / (cc1 - cc2)
  auto v_of = [&](double u) { return (-cc[2] - u * (cc[0] - cc[2])) / (cc[1] - cc[2]); };
  double lo = 0.0, hi = 1.0;
  // Feasibility: v >= 0 and 1 - u - v >= 0, both linear in u.
  auto restrict = [&](double a, double b) {  // a + b u >= 0
    if (b > 0) lo = std::max(lo, -a / b);
    else if (b < 0) hi = std::min(hi, -a / b);
    else if (a < 0) hi = -1.0;
  };
  const double v0 = v_of(0.0), dv = v_of(1.0) - v0;
  restrict(v0, dv);
  restrict(1.0 - v0, -1.0 - dv);
  std::vector<double> best;
  double best_kl = std::numeric_limits<double>::infinity();
  for (int p = 0; p <= points; ++p) {
    const double u = lo + (hi - lo) * p / points;
    const double v = std::clamp(v_of(u), 0.0, 1.0);
    const std::vector<double> g{u, v, std::max(0.0, 1.0 - u - v)};
    const double kl = kl_categorical(g, gi);
    if (kl < best_kl) {
      best_kl = kl;
      best = g;
    }
  }
  return best;
}

void large_deviations(const SuiteOptions& o, Check& c) {
  std::mt19937_64 rng(o.seed + 10);
  const MessageModel def = default_message_model();
  std::vector<std::pair<std::vector<double>, std::vector<double>>> pairs{
      {def.g[0], def.g[1]}, {def.g[0], def.g[2]}, {def.g[1], def.g[2]}};
  for (int k = 0; k < 3; ++k) {
    const MessageModel m = random_mlrp_model(rng);
    pairs.push_back({m.g[0], m.g[1]});
  }
  double grid_err = 0.0;
  for (const auto& [gi, gj] : pairs) {
    const ChernoffPoint cp = chernoff_point(gi, gj);
    const auto oracle = grid_chernoff(gi, gj, 1000000);
    for (int k = 0; k < 3; ++k) grid_err = std::max(grid_err, std::abs(cp.gamma_star[k] - oracle[k]));
  }
  const auto& r = o.baseline.rho;
  const ChernoffPoint binary =
      chernoff_point(std::vector<double>{r[0], 1.0 - r[0]}, std::vector<double>{r[1], 1.0 - r[1]});
  const double endpoint_err = std::abs(binary.gamma_star[0] - equal_kl_point(r[0], r[1]));

  int ordering_bad = 0;
  for (int k = 0; k < 100; ++k) {
    if (!mlrp_rate_ordering(random_mlrp_model(rng)).holds()) ++ordering_bad;
  }

  const std::vector<int> ladder{50, 100, 150, 200, 250, 300};
  const DecayTrace tr = pivotal_decay_trace(o.baseline, def, ladder);
  const auto& first = tr.rows.front();
  const auto& last = tr.rows.back();
  const bool complete = std::none_of(tr.rows.begin(), tr.rows.end(),
                                     [](const DecayRow& d) { return d.skipped; });
  c.detail << "grid oracle max |gamma err| " << num(grid_err) << ", binary endpoint err "
           << num(endpoint_err) << ", ordering failures " << ordering_bad
           << "/100; log ratios 3:1 " << num(first.log_ratio_31) << " -> "
           << num(last.log_ratio_31) << " (slope " << num(tr.fit_31.slope) << ", R2 "
           << num(tr.fit_31.r2) << "), 3:2 " << num(first.log_ratio_32) << " -> "
           << num(last.log_ratio_32) << " (slope " << num(tr.fit_32.slope) << ", R2 "
           << num(tr.fit_32.r2) << ")";
  const double ten = std::log(10.0);
  c.require(grid_err <= 1e-4, "Chernoff points match the grid oracle");
  c.require(endpoint_err <= 1e-12, "binary Chernoff point equals the equal-KL endpoint");
  c.require(ordering_bad == 0, "rate orderings on random MLRP models");
  c.require(complete, "pivotal sets nonempty on the ladder");
  c.require(last.log_ratio_31 <= first.log_ratio_31 - ten &&
                last.log_ratio_32 <= first.log_ratio_32 - ten,
            "ratios shrink at least tenfold from N=50 to N=300");
  c.require(tr.fit_31.slope < 0.0 && tr.fit_32.slope < 0.0, "negative fitted slopes");
  c.require(tr.fit_31.r2 >= 0.9 && tr.fit_32.r2 >= 0.9, "R2 >= 0.9");
}

struct ZTally {
  int checks = 0;
  int outside = 0;
  double worst = 0.0;
  void add(const Estimate& e, double reference) {
    const double z = e.z(reference);
    ++checks;
    worst = std::max(worst, z);
    if (!(z <= 4.0)) ++outside;
  }
};

void monte_carlo(const SuiteOptions& o, Check& c) {
  constexpr std::uint64_t kTrials = 1000000;
  ZTally z;
  auto run = [&](const GameSpec& spec, const ScenarioParams& p, Scenario s, std::uint64_t salt) {
    SimConfig cfg;
    cfg.trials = kTrials;
    cfg.seed = o.seed + salt;
    cfg.scenario = s;
    return simulate_with_reference(spec, p, cfg);
  };

  // Tally law, pivots, outcomes and welfare in equilibrium play.
  for (int n : {50, 100}) {
    const EquilibriumSet set = solve(o.baseline, n);
    if (!set.max()) {
      c.require(false, "baseline equilibrium at N=" + std::to_string(n));
      continue;
    }
    const Equilibrium& eq = *set.max();
    ScenarioParams p;
    p.n = n;
    p.strategy = eq.strategy();
    p.cutoff = eq.cutoff;
    const auto rows = run(o.baseline, p, Scenario::equilibrium_play, 100 + n);
    for (const auto& r : rows) z.add(r.estimate, r.analytic);
    const Welfare w = welfare(o.baseline, eq.strategy(), n, eq.cutoff);
    const SimRow* prop_low = nullptr;
    const SimRow* prop_high = nullptr;
    for (const auto& r : rows) {
      if (r.quantity == "sender_welfare") z.add(r.estimate, w.sender);
      if (r.quantity == "receiver_welfare") z.add(r.estimate, w.receiver);
      if (r.quantity == "proposal" && r.state == 0) prop_low = &r;
      if (r.quantity == "proposal" && r.state == 2) prop_high = &r;
    }
    // Learning gap: P(proposal | low) + P(status quo | high).
    const Estimate gap{prop_low->estimate.value + 1.0 - prop_high->estimate.value,
                       std::hypot(prop_low->estimate.stderr_, prop_high->estimate.stderr_), 0};
    z.add(gap, learning_gap(o.baseline, eq.x, n, eq.cutoff));
  }

  // Committed cutoff with truthful senders.
  {
    ScenarioParams p;
    p.n = 50;
    p.cutoff = sender_optimal_cutoff(o.baseline, 50);
    const ICReport ic = cutoff_ic(o.baseline, 50, p.cutoff);
    for (const auto& r : run(o.baseline, p, Scenario::cutoff_mechanism, 200)) {
      z.add(r.estimate, r.analytic);
      if (r.quantity == "pivot") z.add(r.estimate, std::exp(ic.log_pivot[r.state]));
    }
  }

  // Randomized mechanism.
  {
    const MechanismBuild b = build_randomized_mechanism(o.baseline, 500);
    ScenarioParams p;
    p.n = 500;
    p.mechanism = b.mechanism;
    for (const auto& r : run(o.baseline, p, Scenario::randomized_mechanism, 300)) {
      if (r.quantity == "tally_pmf") continue;
      z.add(r.estimate, r.analytic);
      if (r.quantity == "proposal") z.add(r.estimate, b.p_proposal[r.state]);
      if (r.quantity == "pivot") z.add(r.estimate, std::exp(b.ic.log_pivot[r.state]));
    }
  }

  // Message-model play: pivotal events against the enumerated set.
  {
    ScenarioParams p;
    p.n = 50;
    p.model = default_message_model();
    const PivotalSet set = pivotal_set(o.baseline, *p.model, 50);
    for (const auto& r : run(o.baseline, p, Scenario::message_model_play, 400)) {
      z.add(r.estimate, r.analytic);
      if (r.quantity == "pivot") z.add(r.estimate, std::exp(set.log_prob[r.state]));
    }
  }

  c.detail << z.checks << " comparisons at 1e6 trials, largest |z| " << num(z.worst) << ", "
           << z.outside << " beyond 4 standard errors";
  c.require(z.outside == 0, "all estimates within 4 standard errors");
}

void reproducibility(const SuiteOptions&, Check& c) {
  const std::vector<std::vector<std::string>> commands{
      {"solve", "--n", "200"},
      {"sweep-n", "--ladder", "50,100,200"},
      {"mechanism", "--ladder", "250,500"},
      {"largedev", "--ladder", "50,100"},
      {"simulate", "--n", "30", "--trials", "40000", "--seed", "9"},
      {"simulate", "--scenario", "randomized", "--n", "60", "--trials", "40000"},
      {"simulate", "--scenario", "message-model", "--n", "20", "--trials", "40000"},
  };
  const int saved = max_threads();
  int differing = 0;
  for (const auto& cmd : commands) {
    std::string first;
    for (const char* threads : {"1", "3", "1"}) {
      std::vector<std::string> args = cmd;
      args.push_back("--threads");
      args.push_back(threads);
      std::ostringstream out, err;
      const int code = dispatch(args, out, err);
      if (code != 0) {
        c.require(false, cmd.front() + " exited " + std::to_string(code) + ": " + err.str());
        break;
      }
      if (first.empty()) {
        first = out.str();
      } else if (out.str() != first) {
        ++differing;
      }
    }
  }
  set_max_threads(saved);
  c.detail << commands.size() << " commands run at 1, 3 and 1 threads; " << differing
           << " byte differences";
  c.require(differing == 0, "identical CSV across runs and thread counts");
}

using CriterionFn = void (*)(const SuiteOptions&, Check&);

struct Criterion {
  const char* name;
  CriterionFn fn;
};

constexpr Criterion kCriteria[kCriterionCount] = {
    {"probability identities", probability_identities},
    {"no mixed low-signal equilibria", no_mixed_low_signal},
    {"sender-optimal cutoffs and Pareto order", cutoff_and_pareto},
    {"common-interest regimes", common_interest},
    {"discontinuity with disagreement", discontinuity},
    {"vanishing transmission and incomplete learning", vanishing_transmission},
    {"disagreement threshold", disagreement_threshold},
    {"comparative statics and information index", comparative_statics},
    {"randomized mechanism", randomized_mechanism},
    {"large deviations of pivotal events", large_deviations},
    {"Monte Carlo coherence", monte_carlo},
    {"reproducibility", reproducibility},
};

}  // namespace

const char* criterion_name(int id) {
  if (id < 1 || id > kCriterionCount) return "unknown";
  return kCriteria[id - 1].name;
}

std::vector<CriterionResult> run_suite(const SuiteOptions& options) {
  std::vector<int> ids = options.criteria;
  if (ids.empty()) {
    for (int i = 1; i <= kCriterionCount; ++i) ids.push_back(i);
  }
  std::vector<CriterionResult> out;
  for (int id : ids) {
    CriterionResult r;
    r.id = id;
    r.name = criterion_name(id);
    const auto start = std::chrono::steady_clock::now();
    if (id < 1 || id > kCriterionCount) {
      r.detail = "no such criterion";
    } else {
      Check c;
      try {
        kCriteria[id - 1].fn(options, c);
      } catch (const std::exception& e) {
        c.require(false, std::string("exception: ") + e.what());
      }
      r.pass = c.pass;
      r.detail = c.detail.str();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (options.on_result) options.on_result(r);
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace cheaptalk::cli
