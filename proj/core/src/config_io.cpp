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

#include "cheaptalk/config_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace cheaptalk {
namespace {

using nlohmann::json;
using ordered = nlohmann::ordered_json;

std::vector<double> vector_field(const json& j, const char* key) {
  if (!j.contains(key)) throw ConfigError(std::string("missing key '") + key + "'");
  try {
    return j.at(key).get<std::vector<double>>();
  } catch (const json::exception&) {
    throw ConfigError(std::string("key '") + key + "' must be an array of numbers");
  }
}

Matrix matrix_field(const json& j, const char* key) {
  try {
    return j.at(key).get<Matrix>();
  } catch (const json::exception&) {
    throw ConfigError(std::string("key '") + key + "' must be an array of number arrays");
  }
}

ordered spec_json(const GameSpec& spec) {
  ordered j;
  j["states"] = spec.states;
  j["u_receiver"] = spec.u_receiver;
  j["u_senders"] = spec.u_senders;
  j["prior"] = spec.prior;
  j["rho"] = spec.rho;
  return j;
}

}  // namespace

Config parse_config(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("malformed JSON: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  Config c;
  c.spec.states = vector_field(j, "states");
  c.spec.u_receiver = vector_field(j, "u_receiver");
  c.spec.u_senders = vector_field(j, "u_senders");
  c.spec.prior = vector_field(j, "prior");
  c.spec.rho = vector_field(j, "rho");
  validate(c.spec);
  const bool kernel = j.contains("signal_kernel");
  const bool strategy = j.contains("strategy_matrix");
  if (kernel != strategy) {
    throw ConfigError("signal_kernel and strategy_matrix must be given together");
  }
  if (kernel) {
    const double floor = j.value("signal_floor", 0.05);
    try {
      c.model = make_message_model(matrix_field(j, "signal_kernel"),
                                   make_strategy_matrix(matrix_field(j, "strategy_matrix")),
                                   floor);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(std::string("message model: ") + e.what());
    }
  }
  return c;
}

Config load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

std::string to_json(const GameSpec& spec) { return spec_json(spec).dump(); }

std::string to_json(const Config& config) {
  ordered j = spec_json(config.spec);
  if (config.model) {
    j["signal_kernel"] = config.model->signal_kernel;
    j["strategy_matrix"] = config.model->strategy.p;
    j["signal_floor"] = config.model->floor;
  }
  return j.dump();
}

}  // namespace cheaptalk
