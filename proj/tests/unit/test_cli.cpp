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

#include <doctest.h>

#include <filesystem>
#include <sstream>
#include <string>
#include <vector>

#include "cheaptalk/cli/commands.hpp"
#include "cheaptalk/cli/csv.hpp"
#include "cheaptalk/config_io.hpp"

namespace fs = std::filesystem;
using cheaptalk::cli::dispatch;

namespace {

struct Run {
  int code = 0;
  std::string out;
  std::string err;
};

Run run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  Run r;
  r.code = dispatch(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

fs::path scratch_dir(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("cheaptalk_test_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

const char* kBaseline = R"({
  "states": [1, 2, 3],
  "u_receiver": [-1, 1, 2],
  "u_senders": [-1, -1, 1],
  "prior": [0.45, 0.1, 0.45],
  "rho": [0.2, 0.5, 0.8]
})";

}  // namespace

TEST_CASE("numbers are written with 17 significant digits") {
  using cheaptalk::cli::format_double;
  CHECK(format_double(0.1) == "0.10000000000000001");
  CHECK(format_double(1.0) == "1");
  CHECK(format_double(-2.5e-300) == "-2.5e-300");
  CHECK(format_double(1.0 / 3.0) == "0.33333333333333331");
  CHECK(cheaptalk::cli::format_int(-42) == "-42");
}

TEST_CASE("CSV quotes only fields that need it and checks row width") {
  cheaptalk::cli::CsvTable t({"a", "b"});
  t.add({"1", "x,y"});
  t.add({"say \"hi\"", "2"});
  CHECK(t.str() == "a,b\n1,\"x,y\"\n\"say \"\"hi\"\"\",2\n");
  CHECK_THROWS(t.add({"only one"}));
}

TEST_CASE("config round-trips through JSON") {
  const auto c = cheaptalk::parse_config(kBaseline);
  CHECK(c.spec.u_receiver[2] == 2.0);
  CHECK_FALSE(c.model.has_value());
  const auto again = cheaptalk::parse_config(cheaptalk::to_json(c));
  CHECK(again.spec == c.spec);
}

TEST_CASE("config errors are reported") {
  CHECK_THROWS_AS(cheaptalk::parse_config("{"), cheaptalk::ConfigError);
  CHECK_THROWS_AS(cheaptalk::parse_config("[1,2]"), cheaptalk::ConfigError);
  CHECK_THROWS_AS(cheaptalk::parse_config(R"({"states":[1,2,3]})"), cheaptalk::ConfigError);
  std::string bad = kBaseline;
  bad.replace(bad.find("0.45, 0.1"), 9, "0.65, 0.1");
  CHECK_THROWS_AS(cheaptalk::parse_config(bad), cheaptalk::InvalidSpec);
  const std::string half_model = std::string(kBaseline).insert(
      1, R"("signal_kernel": [[0.7,0.3],[0.5,0.5],[0.3,0.7]],)");
  CHECK_THROWS_AS(cheaptalk::parse_config(half_model), cheaptalk::ConfigError);
}

TEST_CASE("message model keys build a model") {
  const std::string with_model = std::string(kBaseline).insert(1, R"(
    "signal_kernel": [[0.6,0.3,0.1],[0.3,0.4,0.3],[0.1,0.3,0.6]],
    "strategy_matrix": [[0.8,0.15,0.05],[0.3,0.4,0.3],[0.05,0.15,0.8]],)");
  const auto c = cheaptalk::parse_config(with_model);
  REQUIRE(c.model.has_value());
  CHECK(c.model->g[0][0] == doctest::Approx(0.575));
}

TEST_CASE("exit codes distinguish usage, config and success") {
  const fs::path dir = scratch_dir("exit");
  cheaptalk::cli::write_file(dir / "good.json", kBaseline);
  std::string bad = kBaseline;
  bad.replace(bad.find("0.45, 0.1"), 9, "0.65, 0.1");
  cheaptalk::cli::write_file(dir / "bad.json", bad);

  CHECK(run({"no-such-command"}).code == 2);
  CHECK(run({}).code == 2);
  CHECK(run({"solve", "--config", (dir / "missing.json").string()}).code == 2);
  const Run invalid = run({"solve", "--config", (dir / "bad.json").string()});
  CHECK(invalid.code == 2);
  CHECK(invalid.err.find("[prior-simplex]") != std::string::npos);
  CHECK(run({"solve", "--n", "0"}).code == 2);
  const Run ok = run({"solve", "--config", (dir / "good.json").string(), "--n", "50"});
  CHECK(ok.code == 0);
  CHECK(ok.out.rfind("N,x,cutoff,ls_h,ls_l,v_sender,v_receiver\n", 0) == 0);
}

TEST_CASE("outputs pair with a manifest that reproduces them") {
  const fs::path dir = scratch_dir("manifest");
  cheaptalk::cli::write_file(dir / "game.json", kBaseline);
  const std::string csv = (dir / "ladder.csv").string();
  REQUIRE(run({"sweep-n", "--config", (dir / "game.json").string(), "--ladder", "50,100",
               "--out", csv})
              .code == 0);
  REQUIRE(fs::exists(csv + ".manifest.json"));
  const std::string first = cheaptalk::cli::read_file(csv);
  const std::string manifest = cheaptalk::cli::read_file(csv + ".manifest.json");
  for (const char* key : {"\"tool\"", "\"version\"", "\"command\"", "\"config\"", "\"seed\"",
                          "\"threads\"", "\"duration_seconds\""}) {
    CHECK(manifest.find(key) != std::string::npos);
  }
  const std::string rerun = (dir / "rerun.csv").string();
  REQUIRE(run({"--manifest", csv + ".manifest.json", "--out", rerun}).code == 0);
  CHECK(cheaptalk::cli::read_file(rerun) == first);
  CHECK(run({"solve", "--manifest", csv + ".manifest.json"}).code == 2);
}

TEST_CASE("simulate reports estimates next to analytic values") {
  const Run r = run({"simulate", "--n", "10", "--trials", "20000", "--seed", "4"});
  REQUIRE(r.code == 0);
  CHECK(r.out.rfind("quantity,state,tally,estimate,stderr,analytic\n", 0) == 0);
  CHECK(r.out.find("sender_welfare") != std::string::npos);
}

TEST_CASE("verify runs a subset of criteria") {
  const Run r = run({"verify", "--criteria", "1,9"});
  CHECK(r.code == 0);
  CHECK(r.out.rfind("criterion,name,pass,detail\n", 0) == 0);
  CHECK(r.err.find("[PASS] 1 ") != std::string::npos);
  CHECK(r.err.find("[PASS] 9 ") != std::string::npos);
}
