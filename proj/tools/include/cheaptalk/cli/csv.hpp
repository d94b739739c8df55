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

#ifndef CHEAPTALK_CLI_CSV_HPP_
#define CHEAPTALK_CLI_CSV_HPP_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace cheaptalk::cli {

// 17 significant digits, '.' separator; "nan", "inf", "-inf" for
// non-finite values.
std::string format_double(double v);
std::string format_int(long long v);
inline std::string format_bool(bool v) { return v ? "1" : "0"; }

class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> header);

  // Throws std::invalid_argument when the width differs from the header.
  void add(std::vector<std::string> row);

  const std::vector<std::string>& header() const { return header_; }
  std::size_t rows() const { return rows_.size(); }

  // Comma-delimited, LF line endings, fields quoted only when needed.
  std::string str() const;

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

// Writes bytes verbatim (binary mode).
void write_file(const std::filesystem::path& path, const std::string& contents);
std::string read_file(const std::filesystem::path& path);

}  // namespace cheaptalk::cli

#endif  // CHEAPTALK_CLI_CSV_HPP_
