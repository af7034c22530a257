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

#include <cmath>

#include "doctest.h"
#include "weylcoef/spectral/counting.hpp"
#include "weylcoef/spectral/galerkin.hpp"
#include "weylcoef/spectral/mollifier.hpp"
#include "weylcoef/spectral/torus_model.hpp"
#include "weylcoef/weyl.hpp"

using namespace weylcoef;
using namespace weylcoef::spectral;

// The skewed model has a nonzero second coefficient that changes sign in x1,
// so the fit checks the symbolic formula point by point, on both branches.
TEST_CASE("spectral fits follow the symbolic coefficients pointwise") {
  const auto model = build_model("skewed");
  const auto symbols = model.symbols();
  const CosphereQuadrature<double> quad(2, 256);
  const auto mollifier = Mollifier::build(2.0);
  const SpectrumResult coarse = assemble_and_solve(model, 24);
  const SpectrumResult fine = assemble_and_solve(model, 32);

  double coarse_total = 0, fine_total = 0;
  for (int i = 0; i < 8; ++i) {
    const Point2 x(2 * M_PI * (i + 0.5) / 8, 0.0);
    RVector<double> xr(2);
    xr << x(0), x(1);
    const auto direct = weyl_coefficients(symbols, xr, quad);
    CAPTURE(x(0));
    for (Branch branch : {Branch::kPlus, Branch::kMinus}) {
      const bool plus = branch == Branch::kPlus;
      const double a1 = plus ? direct.a_first_plus : direct.a_first_minus;
      const double a0 = plus ? direct.a_second_plus : direct.a_second_minus;
      double err[2];
      int slot = 0;
      for (const SpectrumResult* s : {&coarse, &fine}) {
        const auto window = default_window(s->K, 2.0);
        const auto mu = uniform_grid(window.first, window.second, 97);
        const auto fit = fit_weyl(local_counting_mollified(*s, mollifier, x, mu, branch), 2, window);
        CHECK(std::abs(fit.a_first - a1) < 0.02 * a1);
        err[slot++] = std::abs(fit.a_second - a0);
      }
      CHECK(err[1] <= std::max(0.15 * std::abs(a0), 0.01 * a1));
      coarse_total += err[0];
      fine_total += err[1];
    }
  }
  CHECK(fine_total < coarse_total);
}

TEST_CASE("averaging the local count over x gives the global count") {
  const auto model = build_model("skewed");
  const auto s = assemble_and_solve(model, 12);
  const auto mollifier = Mollifier::build(2.0);
  const auto mu = uniform_grid(2.0, 7.0, 11);
  const int grid = 56;  // exact for the trigonometric polynomials involved
  Eigen::VectorXd averaged = Eigen::VectorXd::Zero(mu.size());
  for (int i = 0; i < grid; ++i) {
    for (int j = 0; j < grid; ++j) {
      const Point2 x(2 * M_PI * i / grid, 2 * M_PI * j / grid);
      averaged += local_counting_mollified(s, mollifier, x, mu).values * (4 * M_PI * M_PI / (grid * grid));
    }
  }
  for (Eigen::Index k = 0; k < mu.size(); ++k) {
    double global = 0;
    for (Eigen::Index e = 0; e < s.eigenvalues.size(); ++e) {
      if (s.eigenvalues(e) > 0) global += mollifier.rho(mu(k) - s.eigenvalues(e));
    }
    CHECK(averaged(k) == doctest::Approx(global).epsilon(1e-10));
  }
}
