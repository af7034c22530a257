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

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "weylcoef/cli/config.hpp"
#include "weylcoef/cli/pipelines.hpp"
#include "weylcoef/errors.hpp"
#include "weylcoef/spectral/torus_model.hpp"

namespace {

using weylcoef::cli::RunConfig;

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitNumerical = 2;
constexpr int kExitTolerance = 3;

// Flags shared by the run subcommands. Each maps onto one config key and
// is applied after the config file, so flags win.
struct Overrides {
  std::string config_path;
  std::vector<std::pair<std::string, std::string>> keyed;
  std::vector<std::string> sets;
};

void add_run_options(CLI::App* cmd, Overrides& o, bool with_pipeline) {
  cmd->add_option("--config", o.config_path, "configuration file (key = value lines)");
  auto keyed = [cmd, &o](const std::string& flag, const std::string& key, const std::string& help) {
    cmd->add_option_function<std::string>(
        flag, [&o, key](const std::string& v) { o.keyed.emplace_back(key, v); }, help);
  };
  keyed("--out", "output.dir", "output directory");
  keyed("--model", "model.name", "catalog model name");
  if (with_pipeline) keyed("--pipeline", "pipeline", "direct | resolvent | spectral | all | gn-check");
  keyed("--eps", "model.eps", "model parameter eps");
  keyed("--beta", "model.beta", "model parameter beta");
  keyed("--b", "model.b", "model parameter b");
  keyed("--K", "spectral.K", "truncation list, comma separated");
  keyed("--t-rho", "mollifier.T_rho", "mollifier support radius");
  keyed("--n-angles", "quadrature.n_angles", "cosphere quadrature nodes");
  keyed("--fd-step", "quadrature.fd_step", "relative finite-difference step");
  keyed("--angles", "resolvent.angles", "two recovery angles, comma separated");
  keyed("--x-count", "x.count", "number of uniform x sample points");
  cmd->add_flag_function(
      "--nuisance", [&o](std::int64_t) { o.keyed.emplace_back("spectral.nuisance", "true"); },
      "add the mu^{n-3} term to the fit");
  cmd->add_option("--set", o.sets, "extra key=value override, repeatable");
}

// `fallback` is the pipeline before the file and flags are applied;
// `forced` wins over both.
RunConfig build_config(const Overrides& o, std::optional<std::string> fallback, std::optional<std::string> forced) {
  RunConfig cfg;
  if (fallback) cfg.set("pipeline", *fallback);
  if (!o.config_path.empty()) weylcoef::cli::apply_config_file(cfg, o.config_path);
  for (const auto& [k, v] : o.keyed) cfg.set(k, v);
  for (const auto& s : o.sets) {
    const auto eq = s.find('=');
    if (eq == std::string::npos) throw weylcoef::ConfigError("--set expects key=value, got '" + s + "'");
    cfg.set(s.substr(0, eq), s.substr(eq + 1));
  }
  if (forced) cfg.set("pipeline", *forced);
  cfg.validate();
  return cfg;
}

void print_models() {
  for (const auto& entry : weylcoef::spectral::catalog()) {
    std::cout << entry.name << "  " << entry.description << "\n";
    for (const auto& p : entry.parameters) {
      std::printf("    %s = %g  in [%g, %g]\n", p.name.c_str(), p.default_value, p.min_value, p.max_value);
    }
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Local Weyl coefficients of first-order matrix systems"};
  app.set_version_flag("--version", std::string(weylcoef::cli::kToolVersion));
  app.require_subcommand(1);

  Overrides compute_o, verify_o, resolvent_o, gn_o;
  auto* compute = app.add_subcommand("compute", "run a pipeline and write CSV reports");
  add_run_options(compute, compute_o, true);
  auto* verify = app.add_subcommand("verify", "run a pipeline and fail with exit 3 on tolerance violations");
  add_run_options(verify, verify_o, true);
  auto* resolvent = app.add_subcommand("resolvent", "resolvent-symbol recovery with the direct cross-check");
  add_run_options(resolvent, resolvent_o, false);
  auto* gn = app.add_subcommand("gn-check", "closed forms of the half-line integrals against quadrature");
  add_run_options(gn, gn_o, false);
  auto* models = app.add_subcommand("models", "list the model catalog");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    if (models->parsed()) {
      print_models();
      return kExitOk;
    }
    RunConfig cfg;
    bool verifying = false;
    if (compute->parsed()) {
      cfg = build_config(compute_o, std::nullopt, std::nullopt);
    } else if (verify->parsed()) {
      cfg = build_config(verify_o, std::string("all"), std::nullopt);
      verifying = true;
    } else if (resolvent->parsed()) {
      cfg = build_config(resolvent_o, std::nullopt, std::string("resolvent"));
    } else {
      cfg = build_config(gn_o, std::nullopt, std::string("gn-check"));
    }
    const auto report = weylcoef::cli::run(cfg);
    std::cout << report.summary(cfg);
    if (verifying && !report.passed()) return kExitTolerance;
    return kExitOk;
  } catch (const weylcoef::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.kind() == weylcoef::ErrorKind::kConfiguration ? kExitConfig : kExitNumerical;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumerical;
  }
}
