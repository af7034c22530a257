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

#ifndef WEYLCOEF_CLI_PIPELINES_HPP
#define WEYLCOEF_CLI_PIPELINES_HPP

#include <exception>
#include <functional>
#include <ostream>
#include <string>
#include <thread>
#include <vector>

#include "weylcoef/cli/config.hpp"

namespace weylcoef::cli {

/// One verification line of the run summary.
struct CheckLine {
  std::string name;
  bool passed = false;
  double value = 0.0;      // measured error
  double tolerance = 0.0;  // bound it was compared against
  std::string detail;
};

struct RunReport {
  std::vector<CheckLine> checks;
  std::vector<std::string> files;
  std::vector<std::string> notes;

  [[nodiscard]] bool passed() const;
  /// Human-readable page: run header, notes, then one PASS/FAIL line per check.
  [[nodiscard]] std::string summary(const RunConfig& config) const;
};

/// Runs the configured pipeline, writes its CSV files into the output
/// directory and returns the verification lines. Library errors propagate.
[[nodiscard]] RunReport run(const RunConfig& config);

/// Worker count: the THREADS environment variable if set and positive,
/// else the hardware concurrency.
[[nodiscard]] unsigned worker_count();

/// Calls body(i) for i in [0, count) on up to `workers` threads. The first
/// exception by index is rethrown after all workers finish.
void parallel_for(std::size_t count, unsigned workers, const std::function<void(std::size_t)>& body);

/// Relative error with a floor on the denominator.
[[nodiscard]] double floored_relative_error(double value, double reference, double floor);

}  // namespace weylcoef::cli

#endif  // WEYLCOEF_CLI_PIPELINES_HPP
