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

#include "cheaptalk/mc.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "cheaptalk/parallel.hpp"

namespace cheaptalk {
namespace {

constexpr std::uint64_t kBlock = 1u << 14;

// Independent stream per trial, keyed by (seed, trial).
class TrialStream {
 public:
  TrialStream(std::uint64_t seed, std::uint64_t trial)
      : state_(mix64(mix64(seed) + trial)) {}
  double uniform() {
    state_ += 0x9e3779b97f4a7c15ULL;
    return static_cast<double>(mix64(state_) >> 11) * 0x1.0p-53;
  }

 private:
  std::uint64_t state_;
};

std::size_t draw_index(TrialStream& rng, const std::vector<double>& weights) {
  const double u = rng.uniform();
  double acc = 0.0;
  for (std::size_t i = 0; i + 1 < weights.size(); ++i) {
    acc += weights[i];
    if (u < acc) return i;
  }
  return weights.size() - 1;
}

struct Counts {
  std::vector<std::uint64_t> state, pivot, proposal;
  std::vector<std::vector<std::uint64_t>> tally;

  Counts(std::size_t states, int tally_size)
      : state(states), pivot(states), proposal(states),
        tally(tally_size > 0 ? states : 0,
              std::vector<std::uint64_t>(tally_size > 0 ? tally_size : 0)) {}

  void add(const Counts& o) {
    for (std::size_t i = 0; i < state.size(); ++i) {
      state[i] += o.state[i];
      pivot[i] += o.pivot[i];
      proposal[i] += o.proposal[i];
      for (std::size_t t = 0; t < (tally.empty() ? 0 : tally[i].size()); ++t) {
        tally[i][t] += o.tally[i][t];
      }
    }
  }
};

Estimate proportion(std::uint64_t hits, std::uint64_t total) {
  if (total == 0) {
    const double nan = std::numeric_limits<double>::quiet_NaN();
    return {nan, nan, 0};
  }
  const double p = static_cast<double>(hits) / static_cast<double>(total);
  return {p, std::sqrt(p * (1.0 - p) / static_cast<double>(total)), total};
}

Estimate payoff_mean(const std::vector<double>& u, const Counts& c,
                     std::uint64_t trials) {
  double m1 = 0.0, m2 = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    const double share = static_cast<double>(c.proposal[i]) / static_cast<double>(trials);
    m1 += u[i] * share;
    m2 += u[i] * u[i] * share;
  }
  return {m1, std::sqrt(std::max(0.0, m2 - m1 * m1) / static_cast<double>(trials)), 0};
}

void require_cutoff_range(int n, int cutoff) {
  if (cutoff < 0 || cutoff > n + 1) {
    throw std::invalid_argument("cutoff must lie in 0..n+1");
  }
}

}  // namespace

std::uint64_t mix64(std::uint64_t x) {
  x ^= x >> 30;
  x *= 0xbf58476d1ce4e5b9ULL;
  x ^= x >> 27;
  x *= 0x94d049bb133111ebULL;
  x ^= x >> 31;
  return x;
}

const char* to_string(Scenario scenario) {
  switch (scenario) {
    case Scenario::equilibrium_play:
      return "equilibrium";
    case Scenario::cutoff_mechanism:
      return "cutoff";
    case Scenario::randomized_mechanism:
      return "randomized";
    case Scenario::message_model_play:
      return "message-model";
  }
  return "?";
}

Scenario parse_scenario(const std::string& name) {
  for (Scenario s : {Scenario::equilibrium_play, Scenario::cutoff_mechanism,
                     Scenario::randomized_mechanism, Scenario::message_model_play}) {
    if (name == to_string(s)) return s;
  }
  throw std::invalid_argument("unknown scenario '" + name +
                              "' (expected equilibrium, cutoff, randomized, message-model)");
}

double Estimate::z(double reference) const {
  double se = stderr_;
  if (samples > 0 && reference >= 0.0 && reference <= 1.0) {
    se = std::max(se, std::sqrt(reference * (1.0 - reference) /
                                static_cast<double>(samples)));
  }
  if (se > 0.0) return std::abs(value - reference) / se;
  return value == reference ? 0.0 : std::numeric_limits<double>::infinity();
}

bool Estimate::agrees(double reference, double sigmas) const {
  return z(reference) <= sigmas;
}

SimResult simulate(const GameSpec& spec, const ScenarioParams& params,
                   const SimConfig& config) {
  validate(spec);
  if (config.trials < 1) throw std::invalid_argument("trials must be at least 1");
  const int n = params.n;
  if (n < 1) throw std::invalid_argument("n must be positive");
  const std::size_t k = spec.num_states();
  const Scenario scenario = config.scenario;

  SenderStrategy strategy = params.strategy;
  if (scenario == Scenario::cutoff_mechanism ||
      scenario == Scenario::randomized_mechanism) {
    strategy = SenderStrategy::truthful();
  }
  require_valid(strategy);
  if (scenario == Scenario::randomized_mechanism) {
    if (!params.mechanism) throw std::invalid_argument("randomized scenario needs a mechanism");
    if (params.mechanism->n != n) throw std::invalid_argument("mechanism built for another n");
    require_cutoff_range(n, params.mechanism->cutoff_alpha);
    require_cutoff_range(n, params.mechanism->cutoff_beta);
  } else if (scenario != Scenario::message_model_play) {
    require_cutoff_range(n, params.cutoff);
  }
  std::optional<ReceiverRule> rule;
  if (scenario == Scenario::message_model_play) {
    if (!params.model) throw std::invalid_argument("message-model scenario needs a model");
    rule.emplace(spec, *params.model);
  }
  const bool binary = scenario != Scenario::message_model_play;
  const int tally_size = binary ? n + 1 : 0;

  const std::uint64_t blocks = (config.trials + kBlock - 1) / kBlock;
  std::vector<Counts> partial(blocks, Counts(k, tally_size));
  parallel_for(blocks, [&](std::size_t b) {
    Counts& c = partial[b];
    const std::uint64_t begin = b * kBlock;
    const std::uint64_t end = std::min(config.trials, begin + kBlock);
    std::vector<int> messages;
    std::vector<int> others;
    for (std::uint64_t trial = begin; trial < end; ++trial) {
      TrialStream rng(config.seed, trial);
      const std::size_t state = draw_index(rng, spec.prior);
      ++c.state[state];
      if (binary) {
        const double rho = spec.rho[state];
        int tally = 0;
        int own = 0;
        for (int j = 0; j < n; ++j) {
          const bool high = rng.uniform() < rho;
          const bool approve = rng.uniform() < (high ? strategy.x_high : strategy.x_low);
          tally += approve ? 1 : 0;
          if (j == 0) own = approve ? 1 : 0;
        }
        int cutoff = params.cutoff;
        if (scenario == Scenario::randomized_mechanism) {
          const auto& m = *params.mechanism;
          cutoff = rng.uniform() < m.mu ? m.cutoff_alpha : m.cutoff_beta;
        }
        ++c.tally[state][tally];
        if (tally - own == cutoff - 1) ++c.pivot[state];
        if (tally >= cutoff) ++c.proposal[state];
      } else {
        const auto& model = *params.model;
        const std::size_t kinds = model.messages();
        messages.assign(kinds, 0);
        int first = 0;
        for (int j = 0; j < n; ++j) {
          const std::size_t s = draw_index(rng, model.signal_kernel[state]);
          const std::size_t msg = draw_index(rng, model.strategy.p[s]);
          ++messages[msg];
          if (j == 0) first = static_cast<int>(msg);
        }
        if (rule->proposal(messages)) ++c.proposal[state];
        others = messages;
        --others[first];
        ++others.front();
        const bool with_lowest = rule->proposal(others);
        --others.front();
        ++others.back();
        if (rule->proposal(others) != with_lowest) ++c.pivot[state];
      }
    }
  });

  Counts total(k, tally_size);
  for (const auto& c : partial) total.add(c);

  SimResult out;
  out.scenario = scenario;
  out.trials = config.trials;
  out.seed = config.seed;
  out.n = n;
  out.state_counts = total.state;
  for (std::size_t i = 0; i < k; ++i) {
    out.pivot.push_back(proportion(total.pivot[i], total.state[i]));
    out.proposal.push_back(proportion(total.proposal[i], total.state[i]));
    if (binary) {
      std::vector<Estimate> pmf;
      for (int t = 0; t <= n; ++t) pmf.push_back(proportion(total.tally[i][t], total.state[i]));
      out.tally_pmf.push_back(std::move(pmf));
    }
  }
  out.sender_welfare = payoff_mean(spec.u_senders, total, config.trials);
  out.receiver_welfare = payoff_mean(spec.u_receiver, total, config.trials);
  return out;
}

}  // namespace cheaptalk
