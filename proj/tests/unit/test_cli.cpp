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

#include <sys/wait.h>
#include <unistd.h>

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "doctest.h"
#include "weylcoef/cli/config.hpp"
#include "weylcoef/cli/csv.hpp"
#include "weylcoef/cli/pipelines.hpp"
#include "weylcoef/errors.hpp"

using namespace weylcoef;
using namespace weylcoef::cli;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("weylcoef_test_" + std::to_string(::getpid())) / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

int run_cli(const std::string& args) {
  const std::string cmd = std::string(WEYLCOEF_CLI_PATH) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  REQUIRE(WIFEXITED(status));
  return WEXITSTATUS(status);
}

}  // namespace

TEST_CASE("configuration keys") {
  RunConfig c;
  CHECK(c.model == "dirac");
  CHECK(c.pipeline == Pipeline::kDirect);
  CHECK(c.angles.size() == 2);
  CHECK_NOTHROW(c.validate());
  apply_config_text(c, R"(# comment
model.name = skewed
model.eps = 0.3

[spectral]
K = 16, 24
window = 4, 9.5
nuisance = true
[tolerance]
fit_a0 = 0.2   # trailing comment
)");
  CHECK(c.model == "skewed");
  CHECK(c.model_params.at("eps") == 0.3);
  CHECK(c.truncations == std::vector<int>{16, 24});
  REQUIRE(c.window.has_value());
  CHECK(c.window->second == 9.5);
  CHECK(c.nuisance);
  CHECK(c.tolerances.fit_second == 0.2);
  c.set("spectral.window", "auto");
  CHECK_FALSE(c.window.has_value());
  c.set("x.points", "0.5 1; 2 3");
  const auto pts = c.sample_points();
  REQUIRE(pts.size() == 2);
  CHECK(pts[1](1) == 3.0);
  CHECK_THROWS_AS(c.set("no.such.key", "1"), ConfigError);
  CHECK_THROWS_AS(c.set("quadrature.n_angles", "abc"), ConfigError);
  CHECK_THROWS_AS(apply_config_text(c, "just words\n"), ConfigError);
  CHECK_THROWS_AS(parse_pipeline("sideways"), ConfigError);
  CHECK(pipeline_name(parse_pipeline("gn-check")) == "gn-check");
  for (const auto& key : known_keys()) CHECK(key.find(' ') == std::string::npos);
}

TEST_CASE("configuration validation") {
  const auto invalid = [](const std::string& key, const std::string& value) {
    RunConfig c;
    c.set(key, value);
    CHECK_THROWS_AS(c.validate(), ConfigError);
  };
  invalid("quadrature.n_angles", "15");
  invalid("quadrature.n_angles", "8");
  invalid("quadrature.fd_step", "0.5");
  invalid("resolvent.angles", "1.0, 1.0");
  invalid("resolvent.angles", "0.5, 1.0, 1.5");
  invalid("resolvent.limit_angles", "0.1");
  invalid("resolvent.angles", "0.5, 3.5");
  invalid("spectral.K", "4");
  invalid("gn.n", "13");
  invalid("tolerance.b1", "-1");
}

TEST_CASE("configuration hash") {
  RunConfig a, b;
  CHECK(a.hash() == b.hash());
  CHECK(a.hash().size() == 16);
  b.set("x.count", "9");
  CHECK(a.hash() != b.hash());
  const std::string canon = a.canonical();
  std::istringstream lines(canon);
  std::string prev, line;
  while (std::getline(lines, line)) {
    CHECK(prev <= line);
    prev = line;
  }
}

TEST_CASE("CSV formatting") {
  CHECK(csv_quote("plain") == "plain");
  CHECK(csv_quote("a,b") == "\"a,b\"");
  CHECK(csv_quote("say \"hi\"") == "\"say \"\"hi\"\"\"");
  CHECK(csv_quote("two\nlines") == "\"two\nlines\"");
  CHECK(format_double(0.1) == "0.10000000000000001");
  CHECK(format_double(-0.0) == "0");
  CHECK(format_double(std::nan("")) == "nan");
  CHECK(format_double(-INFINITY) == "-inf");
  CHECK(std::stod(format_double(M_PI)) == M_PI);
  CsvTable t({"name", "value", "count"});
  t.add_row({std::string("x,y"), 1.5, 3L});
  CHECK_THROWS_AS(t.add_row({1.0}), InvalidArgument);
  CHECK(t.render("abc", "9") == "# config_hash=abc version=9\r\nname,value,count\r\n\"x,y\",1.5,3\r\n");
  const auto dir = scratch("csv");
  t.write_atomic((dir / "sub" / "t.csv").string(), "abc", "9");
  CHECK(slurp(dir / "sub" / "t.csv") == t.render("abc", "9"));
  CHECK_FALSE(fs::exists(dir / "sub" / "t.csv.tmp"));
}

TEST_CASE("parallel helpers") {
  std::atomic<long> sum{0};
  parallel_for(1000, 4, [&](std::size_t i) { sum += static_cast<long>(i); });
  CHECK(sum == 499500);
  try {
    parallel_for(100, 3, [](std::size_t i) {
      if (i == 17 || i == 60) throw std::runtime_error(std::to_string(i));
    });
    FAIL("expected an exception");
  } catch (const std::runtime_error& e) {
    CHECK(std::string(e.what()) == "17");
  }
  CHECK(floored_relative_error(1.1, 1.0, 0.01) == doctest::Approx(0.1));
  CHECK(floored_relative_error(0.001, 0.0, 0.01) == doctest::Approx(0.1));
  CHECK(floored_relative_error(0.0, 0.0, 0.0) == 0.0);
}

TEST_CASE("library runs are deterministic across thread counts") {
  RunConfig c;
  c.set("model.name", "skewed");
  c.set("pipeline", "resolvent");
  c.set("x.count", "4");
  std::string first;
  for (const char* threads : {"1", "3"}) {
    ::setenv("THREADS", threads, 1);
    CHECK(worker_count() == static_cast<unsigned>(std::stoi(threads)));
    const auto dir = scratch(std::string("det") + threads);
    c.set("output.dir", dir.string());
    const auto report = run(c);
    CHECK(report.passed());
    const std::string bytes = slurp(dir / "weyl_coefficients.csv") + slurp(dir / "resolvent_recovery.csv");
    if (first.empty()) {
      first = bytes;
    } else {
      CHECK(bytes == first);
    }
  }
  ::unsetenv("THREADS");
}

TEST_CASE("gn-check runs without a model") {
  RunConfig c;
  c.set("pipeline", "gn-check");
  c.set("output.dir", scratch("gn").string());
  const auto report = run(c);
  CHECK(report.passed());
  CHECK(report.files.size() == 1);
}

TEST_CASE("command-line exit codes") {
  const auto dir = scratch("cli");
  CHECK(run_cli("models") == 0);
  CHECK(run_cli("--version") == 0);
  CHECK(run_cli("") == 1);
  CHECK(run_cli("compute --no-such-flag") == 1);
  CHECK(run_cli("compute --model dirac --x-count 2 --out " + (dir / "d").string()) == 0);
  const std::string csv = slurp(dir / "d" / "weyl_coefficients.csv");
  CHECK(csv.rfind("# config_hash=", 0) == 0);
  CHECK(csv.find("0.15915494309189") != std::string::npos);
  CHECK(run_cli("compute --set bogus.key=1 --out " + (dir / "e").string()) == 1);
  CHECK(run_cli("compute --set noequals --out " + (dir / "e").string()) == 1);
  CHECK(run_cli("compute --model nope --out " + (dir / "e").string()) == 1);
  CHECK(run_cli("verify --model twisted --eps 0.9 --out " + (dir / "e").string()) == 1);
  CHECK(run_cli("compute --config " + (dir / "missing.conf").string()) == 1);
  CHECK(run_cli("resolvent --model skewed --x-count 2 --out " + (dir / "r").string()) == 0);
  CHECK(fs::exists(dir / "r" / "resolvent_recovery.csv"));
  CHECK(run_cli("gn-check --out " + (dir / "g").string()) == 0);
  // a tolerance no fit can meet
  CHECK(run_cli("verify --model dirac --pipeline spectral --K 16 --x-count 2 --set tolerance.fit_a1=1e-12 --out " +
                (dir / "v").string()) == 3);
  CHECK(run_cli("compute --model dirac --pipeline spectral --K 16 --x-count 2 --set tolerance.fit_a1=1e-12 --out " +
                (dir / "v").string()) == 0);
  std::ofstream(dir / "run.conf") << "model.name = shifted-dirac\npipeline = resolvent\nx.count = 2\n";
  CHECK(run_cli("verify --config " + (dir / "run.conf").string() + " --out " + (dir / "c").string()) == 0);
  CHECK(fs::exists(dir / "c" / "resolvent_recovery.csv"));
  CHECK_FALSE(fs::exists(dir / "c" / "spectral_fit.csv"));
}

TEST_CASE("error kinds map to exit codes") {
  CHECK(ConfigError("x").kind() == ErrorKind::kConfiguration);
  CHECK(ParameterOutOfRange("x").kind() == ErrorKind::kConfiguration);
  CHECK(EllipticityViolation("x").kind() == ErrorKind::kNumerical);
  CHECK(NotElliptic("x").kind() == ErrorKind::kNumerical);
  CHECK(std::string(NotElliptic("boom").what()) == "NotElliptic: boom");
}
