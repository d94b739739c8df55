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

#ifndef CHEAPTALK_CONFIG_IO_HPP_
#define CHEAPTALK_CONFIG_IO_HPP_

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>

#include "cheaptalk/largedev.hpp"
#include "cheaptalk/model.hpp"

namespace cheaptalk {

// Malformed JSON, missing keys, or values of the wrong type.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A game config: keys `states`, `u_receiver`, `u_senders`, `prior`, `rho`,
// optionally `signal_kernel`, `strategy_matrix` and `signal_floor` for the
// message model.
struct Config {
  GameSpec spec;
  std::optional<MessageModel> model;
};

// Parses and validates; throws ConfigError or InvalidSpec.
Config parse_config(const std::string& json_text);
Config load_config(const std::filesystem::path& path);

// Deterministic JSON (fixed key order, round-trip doubles).
std::string to_json(const GameSpec& spec);
std::string to_json(const Config& config);

}  // namespace cheaptalk

#endif  // CHEAPTALK_CONFIG_IO_HPP_
