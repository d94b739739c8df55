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

#include "cheaptalk/cli/random_game.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace cheaptalk::cli {

GameSpec random_game(std::mt19937_64& rng, const RandomGameOptions& options) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  auto uniform = [&](double lo, double hi) { return lo + (hi - lo) * unit(rng); };
  for (;;) {
    std::array<double, 3> rho{uniform(0.05, 0.95), uniform(0.05, 0.95), uniform(0.05, 0.95)};
    std::sort(rho.begin(), rho.end());
    if (rho[1] - rho[0] < 0.02 || rho[2] - rho[1] < 0.02) continue;

    const double a = uniform(0.2, 2.0);
    const double b = uniform(0.2, 2.0);
    const double c = uniform(0.2, 2.0);
    // Receiver payoffs dominate the senders' and keep the agreement pattern.
    const double d = a * uniform(0.5, 1.0);
    const double e = uniform(0.2, 2.0);
    const double f = c * uniform(1.0, options.max_high_boost);

    const double q2 = uniform(options.q2_min, options.q2_max);
    const double share = uniform(0.2, 0.8);
    GameSpec spec;
    spec.states = {1.0, 2.0, 3.0};
    spec.u_senders = {-a, -b, c};
    spec.u_receiver = {-d, e, f};
    const double q1 = (1.0 - q2) * share;
    spec.prior = {q1, q2, 1.0 - q2 - q1};
    spec.rho = {rho[0], rho[1], rho[2]};
    if (check(spec).empty()) return spec;
  }
}

MessageModel random_mlrp_model(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::array<double, 3> v{unit(rng), unit(rng), unit(rng)};
  std::sort(v.begin(), v.end());
  std::array<double, 3> s{unit(rng), unit(rng), unit(rng)};
  std::sort(s.begin(), s.end());
  for (int k = 1; k < 3; ++k) {
    v[k] = std::max(v[k], v[k - 1] + 0.05);
    s[k] = std::max(s[k], s[k - 1] + 0.2);
  }
  std::array<double, 3> base{0.2 + unit(rng), 0.2 + unit(rng), 0.2 + unit(rng)};
  Matrix g(3, std::vector<double>(3));
  double floor = 1.0;
  for (int i = 0; i < 3; ++i) {
    double z = 0.0;
    for (int k = 0; k < 3; ++k) z += (g[i][k] = base[k] * std::exp(3.0 * s[i] * v[k]));
    for (int k = 0; k < 3; ++k) floor = std::min(floor, g[i][k] /= z);
  }
  // Each signal is reported as its own message.
  return make_message_model(g, make_strategy_matrix({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}), floor);
}

}  // namespace cheaptalk::cli
