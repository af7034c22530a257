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

#ifndef WEYLCOEF_CLI_CONFIG_HPP
#define WEYLCOEF_CLI_CONFIG_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace weylcoef::cli {

inline constexpr const char* kToolVersion = "1.0.0";

enum class Pipeline { kDirect, kResolvent, kSpectral, kAll, kGnCheck };

[[nodiscard]] Pipeline parse_pipeline(const std::string& name);
[[nodiscard]] std::string pipeline_name(Pipeline p);

struct Tolerances {
  double pipelines = 1e-4;      // direct vs resolvent, relative with the zero floor
  double b_first = 1e-6;        // b1 from the resolvent route vs the closed form
  double fit_first = 0.02;      // fitted first coefficient, relative
  double fit_second = 0.15;     // fitted second coefficient, relative with the zero floor
  double zero_floor = 0.01;     // zero floor as a fraction of the first coefficient
  double gn = 1e-6;             // closed vs numeric half-line integrals, relative
};

/// Effective run configuration after defaults, file and overrides.
struct RunConfig {
  std::string model = "dirac";
  std::map<std::string, double> model_params;
  Pipeline pipeline = Pipeline::kDirect;
  int n_angles = 256;
  double fd_step = 1e-3;
  std::vector<double> angles;        // two-angle recovery
  std::vector<double> limit_angles;  // extrapolated limit
  std::vector<int> truncations{32};
  std::size_t budget = 16384;
  int mu_points = 97;
  std::optional<std::pair<double, double>> window;
  bool nuisance = false;
  double support_radius = 2.0;
  double mollifier_spacing = 0.0;
  double mollifier_half_width = 0.0;
  int x_count = 8;          // x1 = 2 pi (i + 1/2) / x_count
  double x_second = 0.0;    // shared x2 of the uniform points
  std::vector<Eigen::Vector2d> x_explicit;  // overrides the uniform points
  std::vector<int> gn_orders{2, 3, 4, 5};
  std::vector<double> gn_angles;
  std::string output_dir = "out";
  Tolerances tolerances;

  RunConfig();

  /// Sets one dotted key. Throws ConfigError on unknown keys or bad values.
  void set(const std::string& key, const std::string& value);
  /// Checks cross-field constraints. Throws ConfigError.
  void validate() const;
  [[nodiscard]] std::vector<Eigen::Vector2d> sample_points() const;
  /// Sorted key = value lines describing every effective setting.
  [[nodiscard]] std::string canonical() const;
  /// 64-bit FNV-1a hash of canonical(), in hex.
  [[nodiscard]] std::string hash() const;
};

/// Parses the line-oriented grammar: `key = value`, `#` comments, blank
/// lines, and `[section]` headers that prefix following keys with
/// `section.`.
void apply_config_text(RunConfig& config, const std::string& text);
void apply_config_file(RunConfig& config, const std::string& path);

[[nodiscard]] std::vector<std::string> known_keys();

}  // namespace weylcoef::cli

#endif  // WEYLCOEF_CLI_CONFIG_HPP
