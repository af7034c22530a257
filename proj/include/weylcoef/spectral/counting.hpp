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

#ifndef WEYLCOEF_SPECTRAL_COUNTING_HPP
#define WEYLCOEF_SPECTRAL_COUNTING_HPP

#include <optional>
#include <utility>

#include "weylcoef/spectral/galerkin.hpp"
#include "weylcoef/spectral/mollifier.hpp"

namespace weylcoef::spectral {

enum class Branch { kPlus, kMinus };

/// Mollified derivative of the local counting function on a mu grid.
struct CountingSamples {
  Point2 x = Point2::Zero();
  Branch branch = Branch::kPlus;
  Eigen::VectorXd mu;
  Eigen::VectorXd values;
  int K = 0;
  double trusted_bound = 0.0;
  double support_radius = 0.0;
};

/// sum over +-lambda_k > 0 of rho(mu -+ lambda_k) w_k(x).
/// Throws WindowViolation unless 0 < mu <= trusted bound on the whole grid.
[[nodiscard]] CountingSamples local_counting_mollified(const SpectrumResult& spectrum, const Mollifier& mollifier,
                                                       const Point2& x, const Eigen::VectorXd& mu,
                                                       Branch branch = Branch::kPlus);

/// Same, with weights already evaluated at x.
[[nodiscard]] CountingSamples local_counting_mollified(const SpectrumResult& spectrum, const Eigen::VectorXd& weights,
                                                       const Mollifier& mollifier, const Point2& x,
                                                       const Eigen::VectorXd& mu, Branch branch = Branch::kPlus);

struct FitResult {
  double a_first = 0.0;   // coefficient of mu^{n-1}
  double a_second = 0.0;  // coefficient of mu^{n-2}
  std::optional<double> nuisance;
  double residual = 0.0;  // RMS of the fit residuals
  double mu_lo = 0.0;
  double mu_hi = 0.0;
};

/// [8 / T, trusted bound]. Fits must start above 4 / T, the smearing scale
/// of the mollifier; the extra factor 2 keeps the ringing of the mollifier
/// tail off the spectral edge at zero out of the window.
[[nodiscard]] std::pair<double, double> default_window(int K, double support_radius, double trusted_fraction = 0.6);

/// Least-squares fit of c1 mu^{n-1} + c0 mu^{n-2}, optionally with a
/// c_{-1} mu^{n-3} term, to the samples inside the window.
/// Throws WindowViolation or IllConditionedFit.
[[nodiscard]] FitResult fit_weyl(const CountingSamples& samples, int n, std::pair<double, double> window,
                                 bool nuisance = false);

[[nodiscard]] Eigen::VectorXd uniform_grid(double lo, double hi, Eigen::Index count);

}  // namespace weylcoef::spectral

#endif  // WEYLCOEF_SPECTRAL_COUNTING_HPP
