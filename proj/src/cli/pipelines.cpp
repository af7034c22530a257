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

#include "weylcoef/cli/pipelines.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <map>
#include <mutex>
#include <sstream>

#include <boost/math/constants/constants.hpp>

#include "weylcoef/cli/csv.hpp"
#include "weylcoef/errors.hpp"
#include "weylcoef/gn.hpp"
#include "weylcoef/resolvent.hpp"
#include "weylcoef/spectral/counting.hpp"
#include "weylcoef/spectral/galerkin.hpp"
#include "weylcoef/spectral/mollifier.hpp"
#include "weylcoef/spectral/torus_model.hpp"
#include "weylcoef/weyl.hpp"

namespace weylcoef::cli {

namespace {

using spectral::Point2;

std::string fmt(double v, const char* spec = "%.6g") {
  char buf[48];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

CheckLine check(std::string name, double value, double tolerance, std::string detail = {}) {
  return {std::move(name), value <= tolerance, value, tolerance, std::move(detail)};
}

// Everything a run shares across pipelines.
struct Context {
  const RunConfig& config;
  spectral::TorusModel model;
  const ModelSymbols<double>* symbols = nullptr;
  std::vector<Point2> points;
  unsigned workers;
  RunReport report;

  std::string path(const std::string& file) const {
    return (std::filesystem::path(config.output_dir) / file).string();
  }
  void write(const CsvTable& table, const std::string& file) {
    table.write_atomic(path(file), config.hash(), kToolVersion);
    report.files.push_back(path(file));
  }
};

std::vector<WeylCoefficients<double>> run_direct(Context& ctx) {
  const CosphereQuadrature<double> quad(ctx.model.dim(), ctx.config.n_angles);
  WeylOptions<double> options;
  options.step = ctx.config.fd_step;
  std::vector<WeylCoefficients<double>> out(ctx.points.size());
  parallel_for(ctx.points.size(), ctx.workers, [&](std::size_t i) {
    out[i] = weyl_coefficients(*ctx.symbols, RVector<double>(ctx.points[i]), quad, options);
  });

  CsvTable table({"x1", "x2", "sheet", "a1_plus", "a0_plus", "term_sub", "term_bracket", "term_curv"});
  double curvature_gap = 0.0;
  for (std::size_t i = 0; i < out.size(); ++i) {
    for (const auto& t : out[i].breakdown_plus) {
      table.add_row({ctx.points[i](0), ctx.points[i](1), static_cast<long>(t.index), out[i].a_first_plus,
                     out[i].a_second_plus, t.subprincipal, t.bracket, t.curvature});
      curvature_gap = std::max(curvature_gap, std::abs(t.curvature - t.curvature_eigenvector));
    }
  }
  ctx.write(table, "weyl_coefficients.csv");
  ctx.report.checks.push_back(check("direct.curvature_forms", curvature_gap, 1e-6,
                                    "projection vs eigenvector form of the curvature term"));
  return out;
}

void run_resolvent(Context& ctx, const std::vector<WeylCoefficients<double>>& direct) {
  const RunConfig& cfg = ctx.config;
  const int n = ctx.model.dim();
  const CosphereQuadrature<double> quad(n, cfg.n_angles);
  ResolventOptions<double> options;
  options.step = cfg.fd_step;

  std::vector<double> all_angles = cfg.angles;
  all_angles.insert(all_angles.end(), cfg.limit_angles.begin(), cfg.limit_angles.end());
  std::sort(all_angles.begin(), all_angles.end());
  all_angles.erase(std::unique(all_angles.begin(), all_angles.end()), all_angles.end());

  struct PointResult {
    std::vector<BResult<double>> b;
    double two_angle = 0.0;
    double limit = 0.0;
  };
  std::vector<PointResult> out(ctx.points.size());
  parallel_for(ctx.points.size(), ctx.workers, [&](std::size_t i) {
    const auto constants = sheet_constants(*ctx.symbols, RVector<double>(ctx.points[i]), quad, options);
    std::map<double, double> two, limit;
    for (const double phi : all_angles) {
      out[i].b.push_back(b_coefficients(constants, n, phi));
      const double b0 = out[i].b.back().b0;
      if (std::find(cfg.angles.begin(), cfg.angles.end(), phi) != cfg.angles.end()) two[phi] = b0;
      if (std::find(cfg.limit_angles.begin(), cfg.limit_angles.end(), phi) != cfg.limit_angles.end()) limit[phi] = b0;
    }
    out[i].two_angle = recover_second_weyl(two, RecoveryMethod::kTwoAngle);
    out[i].limit = recover_second_weyl(limit, RecoveryMethod::kLimit);
  });

  CsvTable table({"x1", "x2", "phi", "b1", "b0", "a0_recovered_two_angle", "a0_recovered_limit"});
  double err_two = 0.0, err_limit = 0.0, err_b1 = 0.0, err_b0 = 0.0;
  for (std::size_t i = 0; i < out.size(); ++i) {
    const auto& d = direct[i];
    const double floor = cfg.tolerances.zero_floor * d.a_first_plus;
    err_two = std::max(err_two, floored_relative_error(out[i].two_angle, d.a_second_plus, floor));
    err_limit = std::max(err_limit, floored_relative_error(out[i].limit, d.a_second_plus, floor));
    for (const auto& b : out[i].b) {
      table.add_row({ctx.points[i](0), ctx.points[i](1), b.phi, b.b1, b.b0, out[i].two_angle, out[i].limit});
      const auto ref = b_coefficients_from_densities(d.a_first_plus, d.a_first_minus, d.a_second_plus, d.a_second_minus, n,
                                             b.phi);
      err_b1 = std::max(err_b1, floored_relative_error(b.b1, ref.b1, 0.0));
      err_b0 = std::max(err_b0, floored_relative_error(b.b0, ref.b0, floor));
    }
  }
  ctx.write(table, "resolvent_recovery.csv");
  const auto& tol = cfg.tolerances;
  ctx.report.checks.push_back(check("resolvent.two_angle_vs_direct", err_two, tol.pipelines));
  ctx.report.checks.push_back(check("resolvent.limit_vs_direct", err_limit, tol.pipelines));
  ctx.report.checks.push_back(check("resolvent.b1_vs_densities", err_b1, tol.b_first));
  ctx.report.checks.push_back(check("resolvent.b0_vs_densities", err_b0, tol.pipelines));
}

void run_spectral(Context& ctx, const std::vector<WeylCoefficients<double>>& direct) {
  const RunConfig& cfg = ctx.config;
  const int n = ctx.model.dim();
  const auto mollifier = spectral::Mollifier::build(
      cfg.support_radius, spectral::MollifierGrid{cfg.mollifier_spacing, cfg.mollifier_half_width});
  const auto invariants = mollifier.check_invariants();
  double worst_moment = 0.0;
  for (const double m : invariants.moments) worst_moment = std::max(worst_moment, std::abs(m));
  ctx.report.checks.push_back(check("mollifier.integral", std::abs(invariants.integral - 1.0), 1e-8));
  ctx.report.checks.push_back(check("mollifier.moments", worst_moment, 1e-6));

  double avg_first = 0.0, avg_second = 0.0;
  for (const auto& d : direct) {
    avg_first += d.a_first_plus;
    avg_second += d.a_second_plus;
  }
  avg_first /= static_cast<double>(direct.size());
  avg_second /= static_cast<double>(direct.size());

  CsvTable table({"x1", "x2", "K", "a1_fit", "a0_fit", "residual"});
  for (const int K : cfg.truncations) {
    spectral::SolveOptions options;
    options.budget = cfg.budget;
    const auto spectrum = spectral::assemble_and_solve(ctx.model, K, options);
    const auto window = cfg.window ? *cfg.window : spectral::default_window(K, cfg.support_radius);
    const Eigen::VectorXd mu = spectral::uniform_grid(window.first, window.second, cfg.mu_points);
    std::vector<spectral::FitResult> fits(ctx.points.size());
    parallel_for(ctx.points.size(), ctx.workers, [&](std::size_t i) {
      const auto samples = spectral::local_counting_mollified(spectrum, mollifier, ctx.points[i], mu);
      fits[i] = spectral::fit_weyl(samples, n, window, cfg.nuisance);
    });

    double err_first = 0.0, fit_second = 0.0;
    for (std::size_t i = 0; i < fits.size(); ++i) {
      table.add_row({ctx.points[i](0), ctx.points[i](1), static_cast<long>(K), fits[i].a_first, fits[i].a_second,
                     fits[i].residual});
      err_first = std::max(err_first, floored_relative_error(fits[i].a_first, direct[i].a_first_plus, 0.0));
      fit_second += fits[i].a_second;
    }
    fit_second /= static_cast<double>(fits.size());
    const double bound = std::max(cfg.tolerances.fit_second * std::abs(avg_second),
                                  cfg.tolerances.zero_floor * avg_first);
    const std::string tag = "spectral.K" + std::to_string(K);
    ctx.report.checks.push_back(check(tag + ".a1_pointwise", err_first, cfg.tolerances.fit_first));
    ctx.report.checks.push_back(check(tag + ".a0_average", std::abs(fit_second - avg_second), bound,
                                      "fit " + fmt(fit_second) + " vs direct " + fmt(avg_second)));
    ctx.report.notes.push_back("K=" + std::to_string(K) + ": dimension " + std::to_string(spectrum.dimension()) +
                               ", window [" + fmt(window.first) + ", " + fmt(window.second) + "]");
  }
  ctx.write(table, "spectral_fit.csv");
}

void run_gn_check(Context& ctx) {
  const RunConfig& cfg = ctx.config;
  struct Row {
    int n, power;
    double phi, closed, numeric;
  };
  std::vector<Row> rows;
  for (const int n : cfg.gn_orders) {
    for (const double phi : cfg.gn_angles) {
      for (const int power : {n, n - 1}) rows.push_back({n, power, phi, 0.0, 0.0});
    }
  }
  parallel_for(rows.size(), ctx.workers, [&](std::size_t i) {
    Row& r = rows[i];
    const Complex<double> z = std::polar(1.0, r.phi);
    r.closed = gn_integral_closed(r.n, z, r.power).imag();
    r.numeric = gn_integral_numeric(r.n, z, r.power).imag();
  });
  CsvTable table({"n", "phi", "power", "closed", "numeric", "abs_err"});
  double worst = 0.0;
  for (const auto& r : rows) {
    table.add_row({static_cast<long>(r.n), r.phi, static_cast<long>(r.power), r.closed, r.numeric,
                   std::abs(r.closed - r.numeric)});
    worst = std::max(worst, floored_relative_error(r.numeric, r.closed, 0.0));
  }
  ctx.write(table, "gn_check.csv");
  ctx.report.checks.push_back(check("gn.closed_vs_numeric", worst, cfg.tolerances.gn));
}

}  // namespace

bool RunReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckLine& c) { return c.passed; });
}

std::string RunReport::summary(const RunConfig& config) const {
  std::ostringstream out;
  out << "weylcoef " << kToolVersion << "  pipeline=" << pipeline_name(config.pipeline) << "  model=" << config.model;
  if (!config.model_params.empty()) {
    out << "(";
    bool first = true;
    for (const auto& [k, v] : config.model_params) {
      out << (first ? "" : ",") << k << "=" << fmt(v);
      first = false;
    }
    out << ")";
  }
  out << "  config_hash=" << config.hash() << "\n";
  for (const auto& note : notes) out << "  " << note << "\n";
  for (const auto& file : files) out << "  wrote " << file << "\n";
  for (const auto& c : checks) {
    out << (c.passed ? "PASS " : "FAIL ") << c.name << "  err=" << fmt(c.value, "%.3e") << "  tol=" << fmt(c.tolerance, "%.3e");
    if (!c.detail.empty()) out << "  (" << c.detail << ")";
    out << "\n";
  }
  out << (passed() ? "RESULT PASS" : "RESULT FAIL") << "  " << checks.size() << " checks\n";
  return out.str();
}

double floored_relative_error(double value, double reference, double floor) {
  const double denom = std::max(std::abs(reference), std::abs(floor));
  if (denom == 0.0) return std::abs(value - reference);
  return std::abs(value - reference) / denom;
}

unsigned worker_count() {
  if (const char* env = std::getenv("THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v > 0) return static_cast<unsigned>(std::min(v, 256L));
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

void parallel_for(std::size_t count, unsigned workers, const std::function<void(std::size_t)>& body) {
  std::vector<std::exception_ptr> errors(count);
  std::mutex mutex;
  std::size_t next = 0;
  auto work = [&] {
    for (;;) {
      std::size_t i = 0;
      {
        std::lock_guard<std::mutex> lock(mutex);
        if (next >= count) return;
        i = next++;
      }
      try {
        body(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const auto threads = static_cast<std::size_t>(std::max(1u, workers));
  if (threads == 1 || count <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < std::min(threads, count); ++t) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

RunReport run(const RunConfig& config) {
  config.validate();
  Context ctx{config, {}, nullptr, {}, worker_count(), {}};
  if (config.pipeline == Pipeline::kGnCheck) {
    run_gn_check(ctx);
    return ctx.report;
  }
  ctx.model = spectral::build_model(config.model, config.model_params);
  const ModelSymbols<double> symbols = ctx.model.symbols();
  ctx.symbols = &symbols;
  ctx.points = config.sample_points();

  const auto direct = run_direct(ctx);
  if (config.pipeline == Pipeline::kResolvent || config.pipeline == Pipeline::kAll) run_resolvent(ctx, direct);
  if (config.pipeline == Pipeline::kSpectral || config.pipeline == Pipeline::kAll) run_spectral(ctx, direct);
  return ctx.report;
}

}  // namespace weylcoef::cli
