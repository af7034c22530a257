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

#include "weylcoef/cli/csv.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "weylcoef/errors.hpp"

namespace weylcoef::cli {

std::string csv_quote(const std::string& field) {
  if (field.find_first_of(",\"\r\n") == std::string::npos) return field;
  std::string out = "\"";
  for (const char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (v == 0.0) v = 0.0;  // drop the sign of negative zero
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void CsvTable::add_row(std::vector<CsvCell> row) {
  if (row.size() != header_.size()) throw InvalidArgument("CsvTable: row width does not match the header");
  rows_.push_back(std::move(row));
}

std::string CsvTable::render(const std::string& config_hash, const std::string& version) const {
  std::string out = "# config_hash=" + config_hash + " version=" + version + "\r\n";
  auto emit = [&out](const auto& cells, auto&& to_text) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out += ',';
      out += csv_quote(to_text(cells[i]));
    }
    out += "\r\n";
  };
  emit(header_, [](const std::string& s) { return s; });
  for (const auto& row : rows_) {
    emit(row, [](const CsvCell& c) {
      if (const auto* d = std::get_if<double>(&c)) return format_double(*d);
      if (const auto* l = std::get_if<long>(&c)) return std::to_string(*l);
      return std::get<std::string>(c);
    });
  }
  return out;
}

void CsvTable::write_atomic(const std::string& path, const std::string& config_hash,
                            const std::string& version) const {
  namespace fs = std::filesystem;
  const fs::path target(path);
  if (target.has_parent_path()) fs::create_directories(target.parent_path());
  const fs::path tmp = target.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw ConfigError("cannot open '" + tmp.string() + "' for writing");
    out << render(config_hash, version);
    if (!out.flush()) throw ConfigError("failed writing '" + tmp.string() + "'");
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) throw ConfigError("cannot rename '" + tmp.string() + "': " + ec.message());
}

}  // namespace weylcoef::cli
