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

#ifndef CHEAPTALK_MODEL_HPP_
#define CHEAPTALK_MODEL_HPP_

#include <array>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace cheaptalk {

// Primitives of the multi-sender approval game. States are indexed from 0
// in ascending order; the three-state solvers use index 0 for the low
// agreement state, 1 for the disagreement state and 2 for the high agreement
// state. Payoffs are raw utils of the proposal relative to the status quo.
struct GameSpec {
  std::vector<double> states;
  std::vector<double> u_receiver;
  std::vector<double> u_senders;
  std::vector<double> prior;
  // Probability of a high signal in each state.
  std::vector<double> rho;

  std::size_t num_states() const { return states.size(); }

  // Illustrative family: senders get (-1, -1, 1), the receiver (-1, 1, t).
  // The prior puts `q2` on the middle state and splits the remainder between
  // the outer states with q3 / q1 = `q3_over_q1`.
  static GameSpec illustrative(double t, double q2,
                               std::array<double, 3> rho = {0.2, 0.5, 0.8},
                               double q3_over_q1 = 1.0);

  bool operator==(const GameSpec&) const = default;
};

// One violated standing assumption. `lhs` and `rhs` are the two computed
// sides of the failed comparison.
struct Violation {
  std::string assumption;
  std::string detail;
  double lhs = 0.0;
  double rhs = 0.0;
};

class InvalidSpec : public std::invalid_argument {
 public:
  explicit InvalidSpec(std::vector<Violation> violations);
  const std::vector<Violation>& violations() const { return violations_; }

 private:
  std::vector<Violation> violations_;
};

// Assumption names used in Violation::assumption.
inline constexpr const char* kShapeAssumption = "shape";
inline constexpr const char* kPriorAssumption = "prior-simplex";
inline constexpr const char* kStateOrderAssumption = "state-order";
inline constexpr const char* kSignalOrderAssumption = "signal-monotonicity";
inline constexpr const char* kStrongerPreferenceAssumption =
    "receiver-stronger-preference";
inline constexpr const char* kSignPatternAssumption = "agreement-pattern";
inline constexpr const char* kThresholdOrderAssumption =
    "threshold-of-doubt-order";

// Lists every violated assumption. Empty means the spec is valid. Three-state
// specs are checked against the agreement/disagreement pattern; other sizes
// against the generic single-crossing threshold structure.
std::vector<Violation> check(const GameSpec& spec);

// Returns `spec` unchanged when check() is empty, throws InvalidSpec
// otherwise.
GameSpec validate(const GameSpec& spec);

// Throws std::invalid_argument unless the spec has exactly three states.
void require_three_states(const GameSpec& spec);

struct ConflictProfile {
  // (U_S(low)/U_S(high)) * (U_R(high)/U_R(low)); at least 1 for valid specs.
  double ratio = 1.0;
  double q2 = 0.0;
};

ConflictProfile conflict_profile(const GameSpec& spec);

// Approval probabilities on the low and high signal.
struct SenderStrategy {
  double x_low = 0.0;
  double x_high = 0.0;

  // The equilibrium form: approve with probability x on a high signal only.
  static constexpr SenderStrategy on_high(double x) { return {0.0, x}; }
  static constexpr SenderStrategy truthful() { return {0.0, 1.0}; }

  bool informative() const { return x_low < x_high; }
  bool operator==(const SenderStrategy&) const = default;
};

// Throws std::invalid_argument unless 0 <= x_low <= x_high <= 1.
void require_valid(const SenderStrategy& strategy);

}  // namespace cheaptalk

#endif  // CHEAPTALK_MODEL_HPP_
