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

#include "cheaptalk/cli/commands.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <iomanip>
#include <iostream>
#include <limits>
#include <optional>
#include <set>

#include <CLI11.hpp>
#include <json.hpp>

#include "cheaptalk/asympt.hpp"
#include "cheaptalk/bestresp.hpp"
#include "cheaptalk/cli/csv.hpp"
#include "cheaptalk/cli/suite.hpp"
#include "cheaptalk/config_io.hpp"
#include "cheaptalk/equilibrium.hpp"
#include "cheaptalk/largedev.hpp"
#include "cheaptalk/mechanism.hpp"
#include "cheaptalk/parallel.hpp"
#include "cheaptalk/prob.hpp"

namespace cheaptalk::cli {
namespace {

using json = nlohmann::ordered_json;

// Thrown for user-facing configuration problems (exit code 2).
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Common {
  std::string config;
  std::string out;
  int threads = 0;
  double t = std::numeric_limits<double>::quiet_NaN();
  double q2 = std::numeric_limits<double>::quiet_NaN();
};

// Flags that shape the game or the destination; they are folded into the
// manifest's inline config and output fields instead of its argument list.
const std::set<std::string> kAbsorbedFlags = {"--config", "--out", "--threads",
                                              "--t", "--q2", "--manifest"};

struct Outcome {
  CsvTable table{{}};
  json resolved = json::object();
  std::optional<std::uint64_t> seed;
  bool failed = false;
};

std::vector<std::string> strip_absorbed(const std::vector<std::string>& tokens) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    const std::string& tok = tokens[i];
    const auto eq = tok.find('=');
    const std::string name = eq == std::string::npos ? tok : tok.substr(0, eq);
    if (kAbsorbedFlags.count(name)) {
      if (eq == std::string::npos) ++i;
      continue;
    }
    out.push_back(tok);
  }
  return out;
}

std::optional<std::string> take_option(std::vector<std::string>& tokens,
                                       const std::string& name) {
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (tokens[i] == name) {
      if (i + 1 >= tokens.size()) throw UsageError(name + " needs a value");
      std::string v = tokens[i + 1];
      tokens.erase(tokens.begin() + static_cast<long>(i),
                   tokens.begin() + static_cast<long>(i) + 2);
      return v;
    }
    if (tokens[i].rfind(name + "=", 0) == 0) {
      std::string v = tokens[i].substr(name.size() + 1);
      tokens.erase(tokens.begin() + static_cast<long>(i));
      return v;
    }
  }
  return std::nullopt;
}

Config resolve_config(const Common& c, const std::optional<Config>& inline_config) {
  if (inline_config) return *inline_config;
  const bool family = !std::isnan(c.t) || !std::isnan(c.q2);
  if (!c.config.empty()) {
    if (family) throw UsageError("--t/--q2 apply only without --config");
    return load_config(c.config);
  }
  Config cfg;
  cfg.spec = validate(GameSpec::illustrative(std::isnan(c.t) ? 2.0 : c.t,
                                             std::isnan(c.q2) ? 0.1 : c.q2));
  return cfg;
}

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("--config", c.config, "Game config JSON (default: illustrative t=2, q2=0.1)");
  sub->add_option("--out", c.out, "CSV output path; a manifest is written next to it");
  sub->add_option("--threads", c.threads, "Worker thread cap (env CHEAPTALK_THREADS)");
  sub->add_option("--t", c.t, "Receiver payoff in the high state, illustrative family");
  sub->add_option("--q2", c.q2, "Prior mass on the disagreement state, illustrative family");
  sub->add_option("--manifest", "Rerun the command recorded in the manifest at this path");
}

json int_list(const std::vector<int>& v) { return json(v); }

Outcome run_solve(const Config& cfg, int n, int grid) {
  SolveOptions opts;
  opts.grid_points = grid;
  const EquilibriumSet set = solve(cfg.spec, n, opts);
  Outcome o;
  o.table = CsvTable({"N", "x", "cutoff", "ls_h", "ls_l", "v_sender", "v_receiver"});
  for (const auto& eq : set.equilibria) {
    o.table.add({format_int(n), format_double(eq.x), format_int(eq.cutoff),
                 format_double(eq.log_ls_high), format_double(eq.log_ls_low),
                 format_double(eq.v_sender), format_double(eq.v_receiver)});
  }
  o.resolved = {{"n", n}, {"grid_points", grid}};
  return o;
}

Outcome run_sweep_n(const Config& cfg, const std::vector<int>& ladder) {
  Outcome o;
  o.table = CsvTable({"N", "equilibrium_count", "x_max", "cutoff_max", "n_x_max",
                      "v_sender_max", "v_receiver_max", "learning_gap", "info_index"});
  for (const auto& p : trace_most_informative(cfg.spec, ladder)) {
    o.table.add({format_int(p.n), format_int(static_cast<long long>(p.equilibrium_count)),
                 format_double(p.x_max), format_int(p.cutoff_max), format_double(p.n_x_max),
                 format_double(p.v_sender_max), format_double(p.v_receiver_max),
                 format_double(p.learning_gap), format_double(p.info_index)});
  }
  o.resolved = {{"ladder", int_list(ladder)}, {"note", kFiniteNNote}};
  return o;
}

SweepParameter parse_parameter(const std::string& s) {
  if (s == "conflict_ratio") return SweepParameter::conflict_ratio;
  if (s == "q2") return SweepParameter::disagreement_mass;
  throw UsageError("--parameter must be conflict_ratio or q2");
}

Outcome run_sweep_conflict(const Config& cfg, const std::string& param_name,
                           std::vector<double> values, int n) {
  const SweepParameter param = parse_parameter(param_name);
  if (values.empty()) {
    values = param == SweepParameter::conflict_ratio
                 ? std::vector<double>{1.0, 1.2, 1.6, 2.0, 2.5, 3.0, 3.5}
                 : std::vector<double>{0.0, 0.02, 0.05, 0.1, 0.15, 0.2};
  }
  const SweepResult r = sweep_most_informative(cfg.spec, param, values, n);
  Outcome o;
  o.table = CsvTable({param_name, "N", "x_max", "cutoff_max", "v_sender_max",
                      "v_receiver_max", "info_index"});
  for (const auto& row : r.rows) {
    o.table.add({format_double(row.parameter), format_int(n), format_double(row.point.x_max),
                 format_int(row.point.cutoff_max), format_double(row.point.v_sender_max),
                 format_double(row.point.v_receiver_max),
                 format_double(row.point.info_index)});
  }
  o.resolved = {{"parameter", param_name}, {"values", values}, {"n", n}};
  return o;
}

Outcome run_threshold_q(const Config& cfg, const std::vector<int>& ladder, double tolerance,
                        std::vector<double> ratios) {
  if (ratios.empty()) ratios.push_back(conflict_profile(cfg.spec).ratio);
  Outcome o;
  o.table = CsvTable({"conflict_ratio", "q_lo", "q_hi", "raw_lo", "raw_hi", "estimate",
                      "ladder_non_monotone", "persists_everywhere", "evaluations"});
  for (double r : ratios) {
    const QhatEstimate e = estimate_qhat(with_conflict_ratio(cfg.spec, r), ladder, tolerance);
    o.table.add({format_double(r), format_double(e.q_lo), format_double(e.q_hi),
                 format_double(e.raw_lo), format_double(e.raw_hi), format_double(e.estimate()),
                 format_bool(e.ladder_non_monotone), format_bool(e.persists_everywhere),
                 format_int(e.evaluations)});
  }
  o.resolved = {{"ladder", int_list(ladder)},
                {"tolerance", tolerance},
                {"conflict_ratios", ratios},
                {"note", kFiniteNNote}};
  return o;
}

Outcome run_index(const Config& cfg, int n, std::vector<double> ratios) {
  if (ratios.empty()) ratios.push_back(conflict_profile(cfg.spec).ratio);
  Outcome o;
  o.table = CsvTable({"conflict_ratio", "N", "defined", "index", "v_receiver_max",
                      "v_receiver_babbling", "v_receiver_full"});
  for (double r : ratios) {
    const InformationIndex idx = information_index(with_conflict_ratio(cfg.spec, r), n);
    o.table.add({format_double(r), format_int(n), format_bool(idx.defined),
                 format_double(idx.value), format_double(idx.v_receiver_max),
                 format_double(idx.v_receiver_babbling), format_double(idx.v_receiver_full)});
  }
  o.resolved = {{"n", n},
                {"conflict_ratios", ratios},
                {"note", "limsup proxied by the value at N=" + std::to_string(n)}};
  return o;
}

Outcome run_mechanism(const Config& cfg, const std::vector<int>& ladder,
                      std::optional<double> ta, std::optional<double> tb) {
  const MechanismLadder m = randomized_mechanism_ladder(cfg.spec, ladder, ta, tb);
  Outcome o;
  o.table = CsvTable({"N", "mu", "cutoff_alpha", "cutoff_beta", "ic", "p_sq_theta1",
                      "p_prop_theta2", "p_prop_theta3"});
  for (const auto& r : m.rows) {
    o.table.add({format_int(r.n), format_double(r.mu), format_int(r.cutoff_alpha),
                 format_int(r.cutoff_beta), format_bool(r.ic), format_double(r.p_sq_low),
                 format_double(r.p_prop_mid), format_double(r.p_prop_high)});
  }
  o.resolved = {{"ladder", int_list(ladder)},
                {"t_alpha", m.shares.t_alpha},
                {"t_beta", m.shares.t_beta},
                {"kl_alpha", m.shares.kl_alpha},
                {"kl_beta", m.shares.kl_beta}};
  return o;
}

Outcome run_largedev(const Config& cfg, const std::vector<int>& ladder, double radius) {
  const MessageModel model = cfg.model ? *cfg.model : default_message_model();
  const DecayTrace tr = pivotal_decay_trace(cfg.spec, model, ladder, radius);
  Outcome o;
  o.table = CsvTable({"N", "log_ratio_31", "log_ratio_32", "mass_in_ball", "pivotal_count"});
  const double nan = std::numeric_limits<double>::quiet_NaN();
  for (const auto& r : tr.rows) {
    o.table.add({format_int(r.n), format_double(r.skipped ? nan : r.log_ratio_31),
                 format_double(r.skipped ? nan : r.log_ratio_32),
                 format_double(r.skipped ? nan : r.mass_in_ball),
                 format_int(static_cast<long long>(r.pivotal_count))});
  }
  o.resolved = {{"ladder", int_list(ladder)},
                {"radius", radius},
                {"ball_center", tr.center},
                {"model_default", !cfg.model.has_value()},
                {"slope_31", tr.fit_31.slope},
                {"r2_31", tr.fit_31.r2},
                {"slope_32", tr.fit_32.slope},
                {"r2_32", tr.fit_32.r2}};
  return o;
}

struct SimulateArgs {
  std::string scenario = "equilibrium";
  std::uint64_t trials = 100000;
  std::uint64_t seed = 1;
  int n = 50;
  std::optional<double> x;
  std::optional<int> cutoff;
  std::optional<double> t_alpha, t_beta;
};

Outcome run_simulate(const Config& cfg, const SimulateArgs& a) {
  SimConfig sc;
  sc.trials = a.trials;
  sc.seed = a.seed;
  sc.scenario = parse_scenario(a.scenario);
  ScenarioParams p;
  p.n = a.n;
  json resolved = {{"scenario", a.scenario}, {"trials", a.trials}, {"n", a.n}};
  switch (sc.scenario) {
    case Scenario::equilibrium_play: {
      if (a.x) {
        p.strategy = SenderStrategy::on_high(*a.x);
        p.cutoff = a.cutoff ? *a.cutoff : receiver_cutoff(cfg.spec, p.strategy, a.n);
      } else {
        const EquilibriumSet set = solve(cfg.spec, a.n);
        if (!set.max()) {
          throw UsageError("no informative equilibrium at this n; pass --x and --cutoff");
        }
        p.strategy = set.max()->strategy();
        p.cutoff = a.cutoff ? *a.cutoff : set.max()->cutoff;
      }
      resolved["x"] = p.strategy.x_high;
      resolved["cutoff"] = p.cutoff;
      break;
    }
    case Scenario::cutoff_mechanism:
      p.cutoff = a.cutoff ? *a.cutoff : sender_optimal_cutoff(cfg.spec, a.n);
      resolved["cutoff"] = p.cutoff;
      break;
    case Scenario::randomized_mechanism: {
      const MechanismBuild b = build_randomized_mechanism(cfg.spec, a.n, a.t_alpha, a.t_beta);
      p.mechanism = b.mechanism;
      resolved["mu"] = b.mechanism.mu;
      resolved["cutoff_alpha"] = b.mechanism.cutoff_alpha;
      resolved["cutoff_beta"] = b.mechanism.cutoff_beta;
      break;
    }
    case Scenario::message_model_play:
      p.model = cfg.model ? *cfg.model : default_message_model();
      resolved["model_default"] = !cfg.model.has_value();
      break;
  }
  Outcome o;
  o.seed = a.seed;
  o.resolved = resolved;
  o.table = CsvTable({"quantity", "state", "tally", "estimate", "stderr", "analytic"});
  for (const auto& r : simulate_with_reference(cfg.spec, p, sc)) {
    o.table.add({r.quantity, format_int(r.state), format_int(r.tally),
                 format_double(r.estimate.value), format_double(r.estimate.stderr_),
                 format_double(r.analytic)});
  }
  return o;
}

Outcome run_verify(const Config& cfg, std::uint64_t seed, const std::vector<int>& criteria,
                   std::ostream& err) {
  SuiteOptions opts;
  opts.baseline = cfg.spec;
  opts.seed = seed;
  opts.criteria = criteria;
  opts.on_result = [&err](const CriterionResult& r) {
    err << (r.pass ? "[PASS] " : "[FAIL] ") << r.id << ' ' << r.name << ": " << r.detail
        << " (" << std::fixed << std::setprecision(2) << r.seconds << std::defaultfloat
        << " s)\n";
    err.flush();
  };
  Outcome o;
  o.seed = seed;
  o.table = CsvTable({"criterion", "name", "pass", "detail"});
  for (const auto& r : run_suite(opts)) {
    o.failed = o.failed || !r.pass;
    o.table.add({format_int(r.id), r.name, format_bool(r.pass), r.detail});
  }
  o.resolved = {{"criteria", int_list(criteria)}};
  return o;
}

json manifest_json(const std::string& command, const std::vector<std::string>& arguments,
                   const Config& cfg, const Outcome& o, const std::string& out_path,
                   double seconds) {
  json m;
  m["tool"] = "cheaptalk";
  m["version"] = kToolVersion;
  m["command"] = command;
  m["arguments"] = arguments;
  m["config"] = json::parse(to_json(cfg));
  m["resolved"] = o.resolved;
  m["seed"] = o.seed ? json(*o.seed) : json(nullptr);
  m["threads"] = max_threads();
  m["output"] = out_path;
  m["duration_seconds"] = seconds;
  return m;
}

}  // namespace

std::vector<SimRow> simulate_with_reference(const GameSpec& spec, const ScenarioParams& params,
                                            const SimConfig& config) {
  const SimResult sim = simulate(spec, params, config);
  const std::size_t k = spec.num_states();
  const int n = params.n;
  std::vector<double> pivot(k, 0.0), proposal(k, 0.0);
  std::vector<std::vector<double>> pmf;

  if (config.scenario == Scenario::message_model_play) {
    const MessageModel& model = *params.model;
    const ReceiverRule rule(spec, model);
    for (const auto& t : simplex_lattice(static_cast<int>(model.messages()), n)) {
      if (!rule.proposal(t)) continue;
      for (std::size_t i = 0; i < k; ++i) proposal[i] += std::exp(multinomial_logpmf(t, model.g[i]));
    }
    for (auto t : simplex_lattice(static_cast<int>(model.messages()), n - 1)) {
      ++t.front();
      const bool lo = rule.proposal(t);
      --t.front();
      ++t.back();
      const bool hi = rule.proposal(t);
      --t.back();
      if (lo == hi) continue;
      for (std::size_t i = 0; i < k; ++i) pivot[i] += std::exp(multinomial_logpmf(t, model.g[i]));
    }
  } else {
    const SenderStrategy s = config.scenario == Scenario::equilibrium_play
                                 ? params.strategy
                                 : SenderStrategy::truthful();
    std::vector<std::pair<int, double>> lottery;
    if (config.scenario == Scenario::randomized_mechanism) {
      lottery = {{params.mechanism->cutoff_alpha, params.mechanism->mu},
                 {params.mechanism->cutoff_beta, params.mechanism->one_minus_mu}};
    } else {
      lottery = {{params.cutoff, 1.0}};
    }
    for (std::size_t i = 0; i < k; ++i) {
      const int st = static_cast<int>(i);
      std::vector<double> row;
      for (int t = 0; t <= n; ++t) row.push_back(std::exp(tally_logpmf(spec, s, n, t, st).value));
      pmf.push_back(std::move(row));
      const auto tails = binomial_log_upper_tails(n, approval_probability(spec.rho[i], s));
      for (const auto& [c, w] : lottery) {
        proposal[i] += w * std::exp(tails[c]);
        if (c >= 1 && c <= n) pivot[i] += w * std::exp(pivot_logpmf(spec, s, n, c, st).value);
      }
    }
  }

  std::vector<SimRow> rows;
  for (std::size_t i = 0; i < pmf.size(); ++i) {
    for (int t = 0; t <= n; ++t) {
      rows.push_back({"tally_pmf", static_cast<int>(i), t, sim.tally_pmf[i][t], pmf[i][t]});
    }
  }
  for (std::size_t i = 0; i < k; ++i) {
    rows.push_back({"pivot", static_cast<int>(i), -1, sim.pivot[i], pivot[i]});
  }
  for (std::size_t i = 0; i < k; ++i) {
    rows.push_back({"proposal", static_cast<int>(i), -1, sim.proposal[i], proposal[i]});
  }
  double vs = 0.0, vr = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    vs += spec.prior[i] * spec.u_senders[i] * proposal[i];
    vr += spec.prior[i] * spec.u_receiver[i] * proposal[i];
  }
  rows.push_back({"sender_welfare", -1, -1, sim.sender_welfare, vs});
  rows.push_back({"receiver_welfare", -1, -1, sim.receiver_welfare, vr});
  return rows;
}

int dispatch(const std::vector<std::string>& args_in, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args = args_in;
  std::optional<Config> inline_config;
  try {
    if (auto manifest_path = take_option(args, "--manifest")) {
      const json m = json::parse(read_file(*manifest_path));
      std::vector<std::string> rebuilt{m.at("command").get<std::string>()};
      for (const auto& a : m.at("arguments")) rebuilt.push_back(a.get<std::string>());
      inline_config = parse_config(m.at("config").dump());
      std::vector<std::string> rest = args;
      // A leading subcommand in the rerun line must match the manifest.
      if (!rest.empty() && rest.front().rfind("--", 0) != 0) {
        if (rest.front() != rebuilt.front()) {
          throw UsageError("manifest records '" + rebuilt.front() + "', not '" +
                           rest.front() + "'");
        }
        rest.erase(rest.begin());
      }
      std::optional<std::string> out_path = take_option(rest, "--out");
      std::optional<std::string> threads = take_option(rest, "--threads");
      if (!rest.empty()) throw UsageError("unexpected arguments next to --manifest");
      rebuilt.push_back("--out");
      rebuilt.push_back(out_path ? *out_path : m.at("output").get<std::string>());
      if (!threads && m.contains("threads")) threads = std::to_string(m.at("threads").get<int>());
      if (threads) {
        rebuilt.push_back("--threads");
        rebuilt.push_back(*threads);
      }
      args = std::move(rebuilt);
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "error: cannot use manifest: " << e.what() << '\n';
    return 2;
  }

  CLI::App app{"Equilibrium solver and diagnostics for committee cheap-talk games", "cheaptalk"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kToolVersion);

  Common common;
  std::string command;
  std::function<Outcome(const Config&)> action;

  int n = 50;
  int grid = SolveOptions{}.grid_points;
  auto* solve_cmd = app.add_subcommand("solve", "All informative equilibria at one N");
  add_common(solve_cmd, common);
  solve_cmd->add_option("--n", n, "Number of senders")->capture_default_str();
  solve_cmd->add_option("--grid-points", grid, "Scan points per family")->capture_default_str();
  solve_cmd->callback([&] { action = [&](const Config& c) { return run_solve(c, n, grid); }; });

  std::vector<int> ladder;
  auto* sweep_n = app.add_subcommand("sweep-n", "Most informative equilibrium along an N ladder");
  add_common(sweep_n, common);
  sweep_n->add_option("--ladder", ladder, "Comma-separated N values")->delimiter(',');
  sweep_n->callback([&] {
    if (ladder.empty()) ladder = default_ladder();
    action = [&](const Config& c) { return run_sweep_n(c, ladder); };
  });

  std::string parameter = "conflict_ratio";
  std::vector<double> values;
  int sweep_size = 200;
  auto* sweep_c = app.add_subcommand("sweep-conflict", "x_max over a parameter grid at fixed N");
  add_common(sweep_c, common);
  sweep_c->add_option("--parameter", parameter, "conflict_ratio or q2")->capture_default_str();
  sweep_c->add_option("--values", values, "Comma-separated grid")->delimiter(',');
  sweep_c->add_option("--n", sweep_size, "Number of senders")->capture_default_str();
  sweep_c->callback([&] {
    action = [&](const Config& c) { return run_sweep_conflict(c, parameter, values, sweep_size); };
  });

  double tolerance = 1e-3;
  std::vector<double> ratios;
  auto* thr = app.add_subcommand("threshold-q", "Bracket the disagreement-mass threshold");
  add_common(thr, common);
  thr->add_option("--ladder", ladder, "Probe ladder")->delimiter(',');
  thr->add_option("--tolerance", tolerance, "Bracket width")->capture_default_str();
  thr->add_option("--ratios", ratios, "Conflict ratios to scan (default: the config's)")
      ->delimiter(',');
  thr->callback([&] {
    if (ladder.empty()) ladder = default_ladder();
    action = [&](const Config& c) { return run_threshold_q(c, ladder, tolerance, ratios); };
  });

  int index_n = 800;
  auto* idx = app.add_subcommand("index", "Share of the full-information gain transmitted");
  add_common(idx, common);
  idx->add_option("--n", index_n, "Proxy N")->capture_default_str();
  idx->add_option("--ratios", ratios, "Conflict ratios to scan")->delimiter(',');
  idx->callback([&] { action = [&](const Config& c) { return run_index(c, index_n, ratios); }; });

  int mech_n = 0;
  double t_alpha = 0.0, t_beta = 0.0;
  auto* mech = app.add_subcommand("mechanism", "Randomized two-cutoff mechanism diagnostics");
  add_common(mech, common);
  auto* mech_n_opt = mech->add_option("--n", mech_n, "Single N (overrides --ladder)");
  mech->add_option("--ladder", ladder, "N ladder (default 250,500,1000,2000)")->delimiter(',');
  auto* ta_opt = mech->add_option("--t-alpha", t_alpha, "Lower cutoff share");
  auto* tb_opt = mech->add_option("--t-beta", t_beta, "Upper cutoff share");
  mech->callback([&] {
    if (mech_n_opt->count()) ladder = {mech_n};
    if (ladder.empty()) ladder = {250, 500, 1000, 2000};
    action = [&](const Config& c) {
      return run_mechanism(c, ladder, ta_opt->count() ? std::optional(t_alpha) : std::nullopt,
                           tb_opt->count() ? std::optional(t_beta) : std::nullopt);
    };
  });

  double radius = kDefaultBallRadius;
  auto* ld = app.add_subcommand("largedev", "Pivotal-event decay for a message model");
  add_common(ld, common);
  ld->add_option("--ladder", ladder, "N ladder (default 50,100,...,300)")->delimiter(',');
  ld->add_option("--radius", radius, "Ball radius around the Chernoff point")
      ->capture_default_str();
  ld->callback([&] {
    if (ladder.empty()) ladder = {50, 100, 150, 200, 250, 300};
    action = [&](const Config& c) { return run_largedev(c, ladder, radius); };
  });

  SimulateArgs sim;
  double sim_x = 0.0;
  int sim_cutoff = 0;
  auto* simc = app.add_subcommand("simulate", "Seeded Monte Carlo against closed forms");
  add_common(simc, common);
  simc->add_option("--scenario", sim.scenario, "equilibrium, cutoff, randomized, message-model")
      ->capture_default_str();
  simc->add_option("--trials", sim.trials, "Trials")->capture_default_str();
  simc->add_option("--seed", sim.seed, "Seed")->capture_default_str();
  simc->add_option("--n", sim.n, "Number of senders")->capture_default_str();
  auto* x_opt = simc->add_option("--x", sim_x, "Approval probability on a high signal");
  auto* c_opt = simc->add_option("--cutoff", sim_cutoff, "Receiver cutoff");
  auto* sa_opt = simc->add_option("--t-alpha", t_alpha, "Lower cutoff share (randomized)");
  auto* sb_opt = simc->add_option("--t-beta", t_beta, "Upper cutoff share (randomized)");
  simc->callback([&] {
    if (x_opt->count()) sim.x = sim_x;
    if (c_opt->count()) sim.cutoff = sim_cutoff;
    if (sa_opt->count()) sim.t_alpha = t_alpha;
    if (sb_opt->count()) sim.t_beta = t_beta;
    action = [&](const Config& c) { return run_simulate(c, sim); };
  });

  std::uint64_t verify_seed = SuiteOptions{}.seed;
  std::vector<int> criteria;
  auto* ver = app.add_subcommand("verify", "Run the acceptance suite; exit 1 on any failure");
  add_common(ver, common);
  ver->add_option("--seed", verify_seed, "Monte Carlo seed")->capture_default_str();
  ver->add_option("--criteria", criteria, "Subset of criteria (default all)")->delimiter(',');
  ver->callback([&] {
    action = [&](const Config& c) { return run_verify(c, verify_seed, criteria, err); };
  });

  std::vector<std::string> argv_store{"cheaptalk"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& s : argv_store) argv.push_back(s.data());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }
  command = app.get_subcommands().front()->get_name();

  if (common.threads < 0) {
    err << "error: --threads must be positive\n";
    return 2;
  }
  if (common.threads > 0) set_max_threads(common.threads);

  std::vector<std::string> recorded;
  {
    auto it = std::find(args.begin(), args.end(), command);
    recorded = strip_absorbed(std::vector<std::string>(it + 1, args.end()));
  }

  try {
    const Config cfg = resolve_config(common, inline_config);
    const auto start = std::chrono::steady_clock::now();
    const Outcome o = action(cfg);
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const std::string csv = o.table.str();
    if (common.out.empty()) {
      out << csv;
    } else {
      write_file(common.out, csv);
      write_file(common.out + ".manifest.json",
                 manifest_json(command, recorded, cfg, o, common.out, seconds).dump(2) + "\n");
    }
    return o.failed ? 1 : 0;
  } catch (const InvalidSpec& e) {
    err << "error: invalid game spec\n";
    for (const auto& v : e.violations()) {
      err << "  [" << v.assumption << "] " << v.detail << '\n';
    }
    return 2;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace cheaptalk::cli
