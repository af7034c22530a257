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

#include "weylcoef/spectral/mollifier.hpp"

#include <cmath>

#include <boost/math/constants/constants.hpp>
#include <boost/math/quadrature/gauss.hpp>

#include "weylcoef/errors.hpp"

namespace weylcoef::spectral {

namespace {

constexpr int kTimeNodes = 2048;
constexpr double kTablePerUnit = 32.0;  // table nodes per 1/T
constexpr double kTableRange = 256.0;   // table covers [0, 256 / T]

long double bump(long double y) {
  const long double q = 1.0L - y * y;
  return q > 0.0L ? std::exp(-1.0L / q) : 0.0L;
}

// Integral of bump(2u - 1) over [a, b].
long double bump_integral(long double a, long double b) {
  auto f = [](long double u) { return bump(2.0L * u - 1.0L); };
  return boost::math::quadrature::gauss<long double, 30>::integrate(f, a, b);
}

}  // namespace

bool MollifierInvariants::satisfied(double integral_tol, double moment_tol) const {
  if (!(std::abs(integral - 1.0) <= integral_tol)) return false;
  for (const double m : moments) {
    if (!(std::abs(m) <= moment_tol)) return false;
  }
  return decay_outer < decay_constant;
}

Mollifier Mollifier::build(double support_radius, const MollifierGrid& grid) {
  const double two_pi = boost::math::constants::two_pi<double>();
  if (!(support_radius > 0.0)) throw InvalidArgument("Mollifier: support radius must be positive");
  if (support_radius >= two_pi) {
    throw SupportTooLarge("Mollifier: support radius must be below 2 pi, the shortest loop on the torus");
  }
  Mollifier out;
  out.T_ = support_radius;
  const long double T = support_radius;
  const long double h = T / kTimeNodes;

  // Running bump integral from the right end of the transition, so each
  // node costs one short Gauss rule.
  const int half = kTimeNodes / 2;
  std::vector<long double> tail(static_cast<std::size_t>(half + 1), 0.0L);
  for (int i = half - 1; i >= 0; --i) {
    const long double a = static_cast<long double>(i) / half;
    const long double b = static_cast<long double>(i + 1) / half;
    tail[static_cast<std::size_t>(i)] = tail[static_cast<std::size_t>(i + 1)] + bump_integral(a, b);
  }
  const long double total = tail[0];
  const long double inv_pi = 1.0L / boost::math::constants::pi<long double>();
  for (int i = 0; i <= kTimeNodes; ++i) {
    const long double t = h * i;
    const long double plateau = i <= half ? 1.0L : tail[static_cast<std::size_t>(i - half)] / total;
    const long double w = (i == 0 || i == kTimeNodes) ? h / 2.0L : h;
    out.t_nodes_.push_back(t);
    out.t_weights_.push_back(w * plateau * inv_pi);
  }

  out.spacing_ = grid.spacing > 0.0 ? grid.spacing : boost::math::constants::half_pi<double>() / support_radius;
  const double half_width = grid.half_width > 0.0 ? grid.half_width : 392.0 / support_radius;
  const auto count = static_cast<Eigen::Index>(std::floor(half_width / out.spacing_));
  out.grid_points_.resize(2 * count + 1);
  out.samples_.resize(2 * count + 1);
  out.samples_ld_.resize(static_cast<std::size_t>(2 * count + 1));
  for (Eigen::Index k = 0; k <= count; ++k) {
    const long double nu = static_cast<long double>(k) * out.spacing_;
    const long double r = out.rho_direct(nu);
    for (const Eigen::Index idx : {count + k, count - k}) {
      out.grid_points_(idx) = static_cast<double>(idx == count + k ? nu : -nu);
      out.samples_(idx) = static_cast<double>(r);
      out.samples_ld_[static_cast<std::size_t>(idx)] = r;
    }
  }

  out.table_step_ = 1.0 / (kTablePerUnit * support_radius);
  out.table_end_ = kTableRange / support_radius;
  const auto table_size = static_cast<std::size_t>(std::ceil(out.table_end_ / out.table_step_)) + 1;
  out.table_.resize(table_size);
  for (std::size_t k = 0; k < table_size; ++k) {
    const double lambda = out.table_step_ * static_cast<double>(k);
    double f = 0.0, d1 = 0.0, d2 = 0.0;
    for (std::size_t i = 0; i < out.t_nodes_.size(); ++i) {
      const double t = static_cast<double>(out.t_nodes_[i]);
      const double w = static_cast<double>(out.t_weights_[i]);
      const double c = std::cos(lambda * t);
      const double s = std::sin(lambda * t);
      f += w * c;
      d1 -= w * t * s;
      d2 -= w * t * t * c;
    }
    out.table_[k] = {f, d1, d2};
  }
  return out;
}

double Mollifier::rho_hat(double t) const {
  const double a = std::abs(t);
  if (a <= T_ / 2.0) return 1.0;
  if (a >= T_) return 0.0;
  const long double s = 2.0L * (a - T_ / 2.0) / T_;
  const long double num = bump_integral(s, 1.0L);
  const long double den = bump_integral(0.0L, 1.0L);
  return static_cast<double>(num / den);
}

long double Mollifier::rho_direct(long double lambda) const {
  long double acc = 0.0L;
  for (std::size_t i = 0; i < t_nodes_.size(); ++i) acc += t_weights_[i] * std::cos(lambda * t_nodes_[i]);
  return acc;
}

double Mollifier::rho(double lambda) const {
  const double a = std::abs(lambda);
  if (a >= table_end_ - table_step_) return static_cast<double>(rho_direct(a));
  const auto k = static_cast<std::size_t>(a / table_step_);
  const double h = table_step_;
  const double t = a / h - static_cast<double>(k);
  const auto& l = table_[k];
  const auto& r = table_[k + 1];
  const double t2 = t * t, t3 = t2 * t, t4 = t3 * t, t5 = t4 * t;
  const double h0 = 1 - 10 * t3 + 15 * t4 - 6 * t5;
  const double h1 = t - 6 * t3 + 8 * t4 - 3 * t5;
  const double h2 = 0.5 * (t2 - 3 * t3 + 3 * t4 - t5);
  const double h3 = 10 * t3 - 15 * t4 + 6 * t5;
  const double h4 = -4 * t3 + 7 * t4 - 3 * t5;
  const double h5 = 0.5 * (t3 - 2 * t4 + t5);
  return l[0] * h0 + h * l[1] * h1 + h * h * l[2] * h2 + r[0] * h3 + h * r[1] * h4 + h * h * r[2] * h5;
}

long double Mollifier::regularized_moment(int m, long double sigma) const {
  long double acc = 0.0L;
  for (std::size_t k = 0; k < samples_ld_.size(); ++k) {
    const long double nu = grid_points_(static_cast<Eigen::Index>(k));
    acc += samples_ld_[k] * std::pow(nu, m) * std::exp(-0.5L * sigma * sigma * nu * nu);
  }
  return acc * spacing_;
}

MollifierInvariants Mollifier::check_invariants() const {
  MollifierInvariants inv;
  const long double sigma = static_cast<long double>(T_) / 28.0L;
  inv.integral = static_cast<double>(regularized_moment(0, sigma));
  for (int m = 1; m <= 6; ++m) inv.moments[static_cast<std::size_t>(m - 1)] = static_cast<double>(regularized_moment(m, sigma));
  const double half_width = grid_points_(grid_points_.size() - 1);
  for (Eigen::Index k = 0; k < grid_points_.size(); ++k) {
    const double nu = std::abs(grid_points_(k));
    const double v = std::abs(samples_(k)) * std::pow(1.0 + nu, 4);
    inv.decay_constant = std::max(inv.decay_constant, v);
    if (nu >= half_width / 2.0) inv.decay_outer = std::max(inv.decay_outer, v);
  }
  return inv;
}

}  // namespace weylcoef::spectral
