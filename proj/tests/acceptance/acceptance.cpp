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

// Runs the verification suite through the command-line front door, reruns it
// twice from the written manifest, and prints one line per criterion.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "cheaptalk/cli/commands.hpp"
#include "cheaptalk/cli/csv.hpp"
#include "cheaptalk/cli/suite.hpp"

namespace fs = std::filesystem;
using cheaptalk::cli::dispatch;
using cheaptalk::cli::read_file;

namespace {

struct Line {
  bool pass = false;
  std::string detail;
};

// Parses "[PASS] id name: detail (s)" progress lines.
std::map<int, Line> parse_progress(const std::string& err) {
  std::map<int, Line> out;
  std::istringstream in(err);
  std::string line;
  while (std::getline(in, line)) {
    const bool pass = line.rfind("[PASS] ", 0) == 0;
    if (!pass && line.rfind("[FAIL] ", 0) != 0) continue;
    const int id = std::stoi(line.substr(7));
    const auto colon = line.find(": ");
    out[id] = {pass, colon == std::string::npos ? "" : line.substr(colon + 2)};
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  const fs::path dir = argc > 1 ? fs::path(argv[1]) : fs::temp_directory_path() / "cheaptalk_acceptance";
  fs::create_directories(dir);
  const std::string first = (dir / "verify.csv").string();

  std::ostringstream out, err;
  const int code = dispatch({"verify", "--out", first}, out, err);
  std::cerr << err.str();
  std::map<int, Line> lines = parse_progress(err.str());

  // Two reruns from the recorded manifest must reproduce the CSV exactly.
  bool reruns_identical = code == 0 || code == 1;
  std::string rerun_detail;
  if (reruns_identical) {
    const std::string original = read_file(first);
    for (int k = 1; k <= 2; ++k) {
      const std::string path = (dir / ("verify_rerun" + std::to_string(k) + ".csv")).string();
      std::ostringstream o, e;
      const int rc = dispatch({"--manifest", first + ".manifest.json", "--out", path}, o, e);
      const bool same = fs::exists(path) && read_file(path) == original;
      rerun_detail += "manifest rerun " + std::to_string(k) + (same ? " identical" : " differs") +
                      " (exit " + std::to_string(rc) + "); ";
      reruns_identical = reruns_identical && same;
    }
  } else {
    rerun_detail = "verify exited " + std::to_string(code) + "; ";
  }
  Line& repro = lines[cheaptalk::cli::kCriterionCount];
  repro.detail = rerun_detail + repro.detail;
  repro.pass = repro.pass && reruns_identical;

  int failed = 0;
  for (int id = 1; id <= cheaptalk::cli::kCriterionCount; ++id) {
    const auto it = lines.find(id);
    const bool pass = it != lines.end() && it->second.pass;
    if (!pass) ++failed;
    std::printf("criterion %2d %s: %s | %s\n", id, pass ? "PASS" : "FAIL",
                cheaptalk::cli::criterion_name(id),
                it == lines.end() ? "not run" : it->second.detail.c_str());
  }
  std::printf("%d of %d criteria passed\n", cheaptalk::cli::kCriterionCount - failed,
              cheaptalk::cli::kCriterionCount);
  return failed == 0 ? 0 : 1;
}
