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

#ifndef CHEAPTALK_CLI_COMMANDS_HPP_
#define CHEAPTALK_CLI_COMMANDS_HPP_

#include <iosfwd>
#include <string>
#include <vector>

#include "cheaptalk/mc.hpp"
#include "cheaptalk/model.hpp"

namespace cheaptalk::cli {

inline constexpr const char* kToolVersion = "0.1.0";

// Runs the command line (without the program name). Exit codes: 0 success,
// 1 verification failure or runtime error, 2 configuration error.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// One simulated quantity next to its closed-form value.
struct SimRow {
  std::string quantity;  // tally_pmf, pivot, proposal, sender_welfare, receiver_welfare
  int state = -1;        // -1 when not state-specific
  int tally = -1;        // -1 unless quantity == tally_pmf
  Estimate estimate;
  double analytic = 0.0;
};

std::vector<SimRow> simulate_with_reference(const GameSpec& spec,
                                            const ScenarioParams& params,
                                            const SimConfig& config);

}  // namespace cheaptalk::cli

#endif  // CHEAPTALK_CLI_COMMANDS_HPP_
