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

#ifndef CHEAPTALK_CLI_SUITE_HPP_
#define CHEAPTALK_CLI_SUITE_HPP_

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "cheaptalk/model.hpp"

namespace cheaptalk::cli {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  // Deterministic summary of the evidence (no timings).
  std::string detail;
  double seconds = 0.0;
};

struct SuiteOptions {
  // Spec for the baseline checks; its signal accuracies also parametrize the
  // illustrative payoff families used by the regime checks.
  GameSpec baseline = GameSpec::illustrative(2.0, 0.1);
  std::uint64_t seed = 20261016;
  // Empty means every criterion.
  std::vector<int> criteria;
  std::function<void(const CriterionResult&)> on_result;
};

inline constexpr int kCriterionCount = 12;

const char* criterion_name(int id);

std::vector<CriterionResult> run_suite(const SuiteOptions& options);

}  // namespace cheaptalk::cli

#endif  // CHEAPTALK_CLI_SUITE_HPP_
