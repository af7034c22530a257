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

#ifndef WEYLCOEF_SPECTRAL_MOLLIFIER_HPP
#define WEYLCOEF_SPECTRAL_MOLLIFIER_HPP

#include <array>
#include <vector>

#include <Eigen/Dense>

namespace weylcoef::spectral {

/// Uniform sample grid for the mollifier. Zero fields pick defaults that
/// scale with the support radius T: spacing pi / (2T), half-width 392 / T.
struct MollifierGrid {
  double spacing = 0.0;
  double half_width = 0.0;
};

struct MollifierInvariants {
  double integral = 0.0;                 // should be 1
  std::array<double, 6> moments{};       // m = 1..6, should vanish
  double decay_constant = 0.0;           // max |rho| (1 + |nu|)^4 over the samples
  double decay_outer = 0.0;              // same maximum over the outer half of the range
  [[nodiscard]] bool satisfied(double integral_tol = 1e-8, double moment_tol = 1e-6) const;
};

/// rho = inverse Fourier transform of a plateau function rho_hat that is 1
/// on [-T/2, T/2] and vanishes outside (-T, T).
///
/// The transition is the normalized running integral of the bump
/// exp(-1/(1 - y^2)). Internally long double is used so that high moments
/// of the samples are not swamped by rounding.
class Mollifier {
 public:
  /// Throws SupportTooLarge when T >= 2 pi.
  static Mollifier build(double support_radius, const MollifierGrid& grid = {});

  [[nodiscard]] double support_radius() const { return T_; }
  [[nodiscard]] double rho_hat(double t) const;
  /// rho(lambda) from the interpolation table, exact evaluation beyond it.
  [[nodiscard]] double rho(double lambda) const;
  /// rho(lambda) by trapezoid quadrature of the cosine transform.
  [[nodiscard]] long double rho_direct(long double lambda) const;

  [[nodiscard]] const Eigen::VectorXd& sample_points() const { return grid_points_; }
  [[nodiscard]] const Eigen::VectorXd& samples() const { return samples_; }
  [[nodiscard]] double sample_spacing() const { return spacing_; }

  /// Sum over the sample grid of rho(nu) nu^m exp(-sigma^2 nu^2 / 2) times
  /// the spacing. With a band-limited rho the sum equals the integral. The
  /// Gaussian factor makes the sum converge absolutely, and at
  /// sigma = T / 28 it changes the moments by far less than 1e-12.
  [[nodiscard]] long double regularized_moment(int m, long double sigma) const;

  [[nodiscard]] MollifierInvariants check_invariants() const;

 private:
  Mollifier() = default;

  double T_ = 0.0;
  double spacing_ = 0.0;
  std::vector<long double> t_nodes_;
  std::vector<long double> t_weights_;  // trapezoid weight times rho_hat
  Eigen::VectorXd grid_points_;
  Eigen::VectorXd samples_;
  std::vector<long double> samples_ld_;
  // rho, rho', rho'' on [0, table_end_] for quintic Hermite interpolation
  double table_step_ = 0.0;
  double table_end_ = 0.0;
  std::vector<std::array<double, 3>> table_;
};

}  // namespace weylcoef::spectral

#endif  // WEYLCOEF_SPECTRAL_MOLLIFIER_HPP
