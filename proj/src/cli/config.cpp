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

#include "weylcoef/cli/config.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <sstream>

#include <boost/algorithm/string.hpp>
#include <boost/math/constants/constants.hpp>

#include "weylcoef/errors.hpp"

namespace weylcoef::cli {

namespace {

constexpr double kPi = boost::math::constants::pi<double>();

std::string trim(std::string s) {
  boost::algorithm::trim(s);
  return s;
}

double to_double(const std::string& key, const std::string& text) {
  const std::string t = trim(text);
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(t, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (t.empty() || used != t.size() || !std::isfinite(v)) {
    throw ConfigError("key '" + key + "' expects a number, got '" + text + "'");
  }
  return v;
}

long to_integer(const std::string& key, const std::string& text) {
  const double v = to_double(key, text);
  if (v != std::floor(v) || std::abs(v) > 1e9) {
    throw ConfigError("key '" + key + "' expects an integer, got '" + text + "'");
  }
  return static_cast<long>(v);
}

bool to_bool(const std::string& key, const std::string& text) {
  const std::string t = boost::algorithm::to_lower_copy(trim(text));
  if (t == "true" || t == "yes" || t == "1" || t == "on") return true;
  if (t == "false" || t == "no" || t == "0" || t == "off") return false;
  throw ConfigError("key '" + key + "' expects a boolean, got '" + text + "'");
}

std::vector<std::string> split_list(const std::string& text, const char* separators) {
  std::vector<std::string> parts;
  boost::algorithm::split(parts, text, boost::algorithm::is_any_of(separators), boost::algorithm::token_compress_on);
  std::vector<std::string> out;
  for (auto& p : parts) {
    std::string t = trim(p);
    if (!t.empty()) out.push_back(std::move(t));
  }
  return out;
}

std::vector<double> to_doubles(const std::string& key, const std::string& text) {
  std::vector<double> out;
  for (const auto& p : split_list(text, ", \t")) out.push_back(to_double(key, p));
  if (out.empty()) throw ConfigError("key '" + key + "' expects a nonempty list");
  return out;
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

template <typename T, typename F>
std::string join(const std::vector<T>& values, F&& format) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ",";
    out += format(values[i]);
  }
  return out;
}

void require_angles(const std::string& key, const std::vector<double>& angles) {
  for (const double a : angles) {
    if (!(a > 0.0 && a < kPi)) throw ConfigError("key '" + key + "': angles must lie strictly between 0 and pi");
  }
}

}  // namespace

Pipeline parse_pipeline(const std::string& name) {
  if (name == "direct") return Pipeline::kDirect;
  if (name == "resolvent") return Pipeline::kResolvent;
  if (name == "spectral") return Pipeline::kSpectral;
  if (name == "all") return Pipeline::kAll;
  if (name == "gn-check") return Pipeline::kGnCheck;
  throw ConfigError("unknown pipeline '" + name + "'");
}

std::string pipeline_name(Pipeline p) {
  switch (p) {
    case Pipeline::kDirect:
      return "direct";
    case Pipeline::kResolvent:
      return "resolvent";
    case Pipeline::kSpectral:
      return "spectral";
    case Pipeline::kAll:
      return "all";
    case Pipeline::kGnCheck:
      return "gn-check";
  }
  return "direct";
}

RunConfig::RunConfig()
    : angles{kPi / 4.0, 3.0 * kPi / 4.0},
      limit_angles{0.1, 0.05, 0.025},
      gn_angles{kPi / 6.0, kPi / 3.0, kPi / 2.0, 2.0 * kPi / 3.0, 5.0 * kPi / 6.0} {}

std::vector<std::string> known_keys() {
  return {"model.name",          "model.<parameter>",  "pipeline",
          "quadrature.n_angles", "quadrature.fd_step", "resolvent.angles",
          "resolvent.limit_angles", "spectral.K",      "spectral.budget",
          "spectral.mu_points",  "spectral.window",    "spectral.nuisance",
          "mollifier.T_rho",     "mollifier.spacing",  "mollifier.half_width",
          "x.count",             "x.x2",               "x.points",
          "gn.n",                "gn.angles",          "output.dir",
          "tolerance.pipelines", "tolerance.b1",       "tolerance.fit_a1",
          "tolerance.fit_a0",    "tolerance.zero_floor", "tolerance.gn"};
}

void RunConfig::set(const std::string& raw_key, const std::string& raw_value) {
  const std::string key = trim(raw_key);
  const std::string value = trim(raw_value);
  if (key == "model.name") {
    if (value.empty()) throw ConfigError("model.name must not be empty");
    model = value;
  } else if (key.rfind("model.", 0) == 0) {
    const std::string param = key.substr(6);
    if (param.empty()) throw ConfigError("malformed key '" + key + "'");
    model_params[param] = to_double(key, value);
  } else if (key == "pipeline") {
    pipeline = parse_pipeline(value);
  } else if (key == "quadrature.n_angles") {
    n_angles = static_cast<int>(to_integer(key, value));
  } else if (key == "quadrature.fd_step") {
    fd_step = to_double(key, value);
  } else if (key == "resolvent.angles") {
    angles = to_doubles(key, value);
  } else if (key == "resolvent.limit_angles") {
    limit_angles = to_doubles(key, value);
  } else if (key == "spectral.K") {
    truncations.clear();
    for (const double k : to_doubles(key, value)) truncations.push_back(static_cast<int>(to_integer(key, fmt(k))));
  } else if (key == "spectral.budget") {
    budget = static_cast<std::size_t>(std::max(0L, to_integer(key, value)));
  } else if (key == "spectral.mu_points") {
    mu_points = static_cast<int>(to_integer(key, value));
  } else if (key == "spectral.window") {
    if (boost::algorithm::to_lower_copy(value) == "auto") {
      window.reset();
    } else {
      const auto w = to_doubles(key, value);
      if (w.size() != 2) throw ConfigError("spectral.window expects 'auto' or 'lo, hi'");
      window = std::make_pair(w[0], w[1]);
    }
  } else if (key == "spectral.nuisance") {
    nuisance = to_bool(key, value);
  } else if (key == "mollifier.T_rho") {
    support_radius = to_double(key, value);
  } else if (key == "mollifier.spacing") {
    mollifier_spacing = to_double(key, value);
  } else if (key == "mollifier.half_width") {
    mollifier_half_width = to_double(key, value);
  } else if (key == "x.count") {
    x_count = static_cast<int>(to_integer(key, value));
  } else if (key == "x.x2") {
    x_second = to_double(key, value);
  } else if (key == "x.points") {
    x_explicit.clear();
    for (const auto& point : split_list(value, ";")) {
      const auto c = to_doubles(key, point);
      if (c.size() != 2) throw ConfigError("x.points expects 'x1 x2; x1 x2; ...'");
      x_explicit.emplace_back(c[0], c[1]);
    }
  } else if (key == "gn.n") {
    gn_orders.clear();
    for (const double k : to_doubles(key, value)) gn_orders.push_back(static_cast<int>(to_integer(key, fmt(k))));
  } else if (key == "gn.angles") {
    gn_angles = to_doubles(key, value);
  } else if (key == "output.dir") {
    if (value.empty()) throw ConfigError("output.dir must not be empty");
    output_dir = value;
  } else if (key == "tolerance.pipelines") {
    tolerances.pipelines = to_double(key, value);
  } else if (key == "tolerance.b1") {
    tolerances.b_first = to_double(key, value);
  } else if (key == "tolerance.fit_a1") {
    tolerances.fit_first = to_double(key, value);
  } else if (key == "tolerance.fit_a0") {
    tolerances.fit_second = to_double(key, value);
  } else if (key == "tolerance.zero_floor") {
    tolerances.zero_floor = to_double(key, value);
  } else if (key == "tolerance.gn") {
    tolerances.gn = to_double(key, value);
  } else {
    throw ConfigError("unknown configuration key '" + key + "'");
  }
}

void RunConfig::validate() const {
  if (n_angles < 16 || n_angles % 2 != 0) throw ConfigError("quadrature.n_angles must be even and at least 16");
  if (!(fd_step > 0.0 && fd_step < 0.1)) throw ConfigError("quadrature.fd_step must lie in (0, 0.1)");
  require_angles("resolvent.angles", angles);
  require_angles("resolvent.limit_angles", limit_angles);
  require_angles("gn.angles", gn_angles);
  if (angles.size() != 2) throw ConfigError("resolvent.angles needs exactly two angles");
  if (std::abs(angles[0] - angles[1]) < 1e-6) throw ConfigError("resolvent.angles must be distinct");
  if (limit_angles.size() < 2) throw ConfigError("resolvent.limit_angles needs at least two angles");
  for (const int k : truncations) {
    if (k < 8) throw ConfigError("spectral.K values must be at least 8");
  }
  if (mu_points < 8) throw ConfigError("spectral.mu_points must be at least 8");
  if (!(support_radius > 0.0)) throw ConfigError("mollifier.T_rho must be positive");
  if (mollifier_spacing < 0.0 || mollifier_half_width < 0.0) {
    throw ConfigError("mollifier grid settings must be nonnegative (0 selects the default)");
  }
  if (x_explicit.empty() && x_count < 1) throw ConfigError("x.count must be positive");
  for (const int n : gn_orders) {
    if (n < 2 || n > 12) throw ConfigError("gn.n values must lie in [2, 12]");
  }
  const Tolerances& t = tolerances;
  for (const double v : {t.pipelines, t.b_first, t.fit_first, t.fit_second, t.zero_floor, t.gn}) {
    if (!(v >= 0.0)) throw ConfigError("tolerances must be nonnegative");
  }
}

std::vector<Eigen::Vector2d> RunConfig::sample_points() const {
  if (!x_explicit.empty()) return x_explicit;
  std::vector<Eigen::Vector2d> out;
  for (int i = 0; i < x_count; ++i) out.emplace_back(2.0 * kPi * (i + 0.5) / x_count, x_second);
  return out;
}

std::string RunConfig::canonical() const {
  std::map<std::string, std::string> kv;
  kv["model.name"] = model;
  for (const auto& [k, v] : model_params) kv["model." + k] = fmt(v);
  kv["pipeline"] = pipeline_name(pipeline);
  kv["quadrature.n_angles"] = std::to_string(n_angles);
  kv["quadrature.fd_step"] = fmt(fd_step);
  kv["resolvent.angles"] = join(angles, fmt);
  kv["resolvent.limit_angles"] = join(limit_angles, fmt);
  kv["spectral.K"] = join(truncations, [](int k) { return std::to_string(k); });
  kv["spectral.budget"] = std::to_string(budget);
  kv["spectral.mu_points"] = std::to_string(mu_points);
  kv["spectral.window"] = window ? fmt(window->first) + "," + fmt(window->second) : "auto";
  kv["spectral.nuisance"] = nuisance ? "true" : "false";
  kv["mollifier.T_rho"] = fmt(support_radius);
  kv["mollifier.spacing"] = fmt(mollifier_spacing);
  kv["mollifier.half_width"] = fmt(mollifier_half_width);
  kv["x.points"] = join(sample_points(), [](const Eigen::Vector2d& p) { return fmt(p(0)) + " " + fmt(p(1)); });
  kv["gn.n"] = join(gn_orders, [](int k) { return std::to_string(k); });
  kv["gn.angles"] = join(gn_angles, fmt);
  kv["tolerance.pipelines"] = fmt(tolerances.pipelines);
  kv["tolerance.b1"] = fmt(tolerances.b_first);
  kv["tolerance.fit_a1"] = fmt(tolerances.fit_first);
  kv["tolerance.fit_a0"] = fmt(tolerances.fit_second);
  kv["tolerance.zero_floor"] = fmt(tolerances.zero_floor);
  kv["tolerance.gn"] = fmt(tolerances.gn);
  std::string out;
  for (const auto& [k, v] : kv) out += k + " = " + v + "\n";
  return out;
}

std::string RunConfig::hash() const {
  std::uint64_t h = 14695981039346656037ULL;
  for (const unsigned char c : canonical()) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

void apply_config_text(RunConfig& config, const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::string section;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    const auto hash_pos = line.find('#');
    if (hash_pos != std::string::npos) line.erase(hash_pos);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']' || line.size() < 3) {
        throw ConfigError("line " + std::to_string(number) + ": malformed section header");
      }
      section = trim(line.substr(1, line.size() - 2));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError("line " + std::to_string(number) + ": expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    if (key.empty()) throw ConfigError("line " + std::to_string(number) + ": missing key");
    try {
      config.set(section.empty() ? key : section + "." + key, line.substr(eq + 1));
    } catch (const ConfigError& e) {
      throw ConfigError("line " + std::to_string(number) + ": " + e.what());
    }
  }
}

void apply_config_file(RunConfig& config, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read configuration file '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  apply_config_text(config, buffer.str());
}

}  // namespace weylcoef::cli
