// Copyright 2026 The weylcoef Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef WEYLCOEF_CLI_CSV_HPP
#define WEYLCOEF_CLI_CSV_HPP

#include <string>
#include <variant>
#include <vector>

namespace weylcoef::cli {

using CsvCell = std::variant<std::string, double, long>;

/// In-memory CSV table written in one shot.
///
/// Layout: a `# config_hash=<hash> version=<version>` comment line, the
/// header row, then the data rows. Fields follow RFC 4180 and doubles are
/// printed with 17 significant digits, so identical inputs give identical
/// bytes.
class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}

  /// Throws InvalidArgument when the row width differs from the header.
  void add_row(std::vector<CsvCell> row);

  [[nodiscard]] std::size_t rows() const { return rows_.size(); }
  [[nodiscard]] std::string render(const std::string& config_hash, const std::string& version) const;

  /// Writes to a sibling temporary file and renames it over `path`.
  void write_atomic(const std::string& path, const std::string& config_hash, const std::string& version) const;

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<CsvCell>> rows_;
};

[[nodiscard]] std::string csv_quote(const std::string& field);
[[nodiscard]] std::string format_double(double v);

}  // namespace weylcoef::cli

#endif  // WEYLCOEF_CLI_CSV_HPP
