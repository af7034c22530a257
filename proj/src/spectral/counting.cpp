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

#include "weylcoef/spectral/counting.hpp"

#include <cmath>
#include <string>

#include "weylcoef/errors.hpp"

namespace weylcoef::spectral {

Eigen::VectorXd uniform_grid(double lo, double hi, Eigen::Index count) {
  if (count < 2 || !(hi > lo)) throw InvalidArgument("uniform_grid: need hi > lo and at least two points");
  return Eigen::VectorXd::LinSpaced(count, lo, hi);
}

std::pair<double, double> default_window(int K, double support_radius, double trusted_fraction) {
  return {8.0 / support_radius, trusted_fraction * K};
}

CountingSamples local_counting_mollified(const SpectrumResult& spectrum, const Mollifier& mollifier, const Point2& x,
                                         const Eigen::VectorXd& mu, Branch branch) {
  return local_counting_mollified(spectrum, local_weights(spectrum, x), mollifier, x, mu, branch);
}

CountingSamples local_counting_mollified(const SpectrumResult& spectrum, const Eigen::VectorXd& weights,
                                         const Mollifier& mollifier, const Point2& x, const Eigen::VectorXd& mu,
                                         Branch branch) {
  if (mu.size() == 0) throw WindowViolation("local_counting_mollified: empty mu grid");
  if (!(mu.minCoeff() > 0.0) || mu.maxCoeff() > spectrum.trusted_bound) {
    throw WindowViolation("local_counting_mollified: mu grid must lie in (0, " +
                          std::to_string(spectrum.trusted_bound) + "]");
  }
  if (weights.size() != spectrum.eigenvalues.size()) {
    throw DimensionMismatch("local_counting_mollified: one weight per eigenvalue is required");
  }
  const double sign = branch == Branch::kPlus ? 1.0 : -1.0;
  CountingSamples out;
  out.x = x;
  out.branch = branch;
  out.mu = mu;
  out.values = Eigen::VectorXd::Zero(mu.size());
  out.K = spectrum.K;
  out.trusted_bound = spectrum.trusted_bound;
  out.support_radius = mollifier.support_radius();
  for (Eigen::Index i = 0; i < mu.size(); ++i) {
    double acc = 0.0;
    for (Eigen::Index k = 0; k < spectrum.eigenvalues.size(); ++k) {
      const double lambda = sign * spectrum.eigenvalues(k);
      if (lambda > 0.0) acc += mollifier.rho(mu(i) - lambda) * weights(k);
    }
    out.values(i) = acc;
  }
  return out;
}

FitResult fit_weyl(const CountingSamples& samples, int n, std::pair<double, double> window, bool nuisance) {
  const auto [lo, hi] = window;
  if (n < 2) throw InvalidArgument("fit_weyl: n must be at least 2");
  if (!(lo > 0.0) || !(hi > lo)) throw WindowViolation("fit_weyl: window must satisfy 0 < lo < hi");
  if (hi > samples.trusted_bound * (1.0 + 1e-12)) {
    throw WindowViolation("fit_weyl: window exceeds the trusted eigenvalue range");
  }
  if (lo < 4.0 / samples.support_radius * (1.0 - 1e-12)) {
    throw WindowViolation("fit_weyl: window starts below the mollifier smearing scale 4 / T");
  }
  if (hi / lo < 2.0) throw IllConditionedFit("fit_weyl: window spans less than a factor of 2");

  std::vector<Eigen::Index> rows;
  for (Eigen::Index i = 0; i < samples.mu.size(); ++i) {
    if (samples.mu(i) >= lo * (1.0 - 1e-12) && samples.mu(i) <= hi * (1.0 + 1e-12)) rows.push_back(i);
  }
  const Eigen::Index cols = nuisance ? 3 : 2;
  if (static_cast<Eigen::Index>(rows.size()) < cols + 2) {
    throw WindowViolation("fit_weyl: too few samples inside the window");
  }
  Eigen::MatrixXd design(static_cast<Eigen::Index>(rows.size()), cols);
  Eigen::VectorXd rhs(static_cast<Eigen::Index>(rows.size()));
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const double m = samples.mu(rows[r]);
    const auto row = static_cast<Eigen::Index>(r);
    design(row, 0) = std::pow(m, n - 1);
    design(row, 1) = std::pow(m, n - 2);
    if (nuisance) design(row, 2) = std::pow(m, n - 3);
    rhs(row) = samples.values(rows[r]);
  }
  const Eigen::VectorXd coef = design.colPivHouseholderQr().solve(rhs);
  FitResult out;
  out.a_first = coef(0);
  out.a_second = coef(1);
  if (nuisance) out.nuisance = coef(2);
  out.residual = std::sqrt((design * coef - rhs).squaredNorm() / static_cast<double>(rows.size()));
  out.mu_lo = lo;
  out.mu_hi = hi;
  return out;
}

}  // namespace weylcoef::spectral
