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

#ifndef WEYLCOEF_GN_HPP
#define WEYLCOEF_GN_HPP

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include <boost/math/constants/constants.hpp>

#include "weylcoef/quadrature.hpp"
#include "weylcoef/types.hpp"

namespace weylcoef {

namespace detail {

template <typename T>
[[nodiscard]] T ipow(T base, int e) {
  T out(1);
  for (int i = 0; i < e; ++i) out *= base;
  return out;
}

template <typename Scalar>
void require_nonreal(const Complex<Scalar>& z) {
  if (z.imag() == Scalar(0)) throw RealSpectralParameter("spectral parameter must have nonzero imaginary part");
}

template <typename Scalar>
void require_open_angle(Scalar phi) {
  const Scalar pi = boost::math::constants::pi<Scalar>();
  if (!(phi > Scalar(0) && phi < pi)) throw AngleOutOfRange("angle must lie strictly between 0 and pi");
}

}  // namespace detail

/// 2/(mu - z)^n - 1/(mu - 2z)^n minus its complex conjugate.
///
/// The result is purely imaginary by construction.
template <typename Scalar>
[[nodiscard]] Complex<Scalar> g_n(Scalar mu, Complex<Scalar> z, int n) {
  detail::require_nonreal(z);
  if (n < 1) throw InvalidArgument("g_n: n must be positive");
  const Complex<Scalar> w = Scalar(2) / detail::ipow(Complex<Scalar>(mu) - z, n) -
                            Scalar(1) / detail::ipow(Complex<Scalar>(mu) - Scalar(2) * z, n);
  return {Scalar(0), Scalar(2) * w.imag()};
}

/// Argument with the cut along the positive real axis, valued in [0, 2 pi).
template <typename Scalar>
[[nodiscard]] Scalar arg_cut_positive_axis(Complex<Scalar> z) {
  Scalar a = std::atan2(z.imag(), z.real());
  if (a < Scalar(0)) a += boost::math::constants::two_pi<Scalar>();
  return a;
}

/// Closed form of the half-line integral of g_n(mu, z) mu^power, power in {n, n - 1}.
template <typename Scalar>
[[nodiscard]] Complex<Scalar> gn_integral_closed(int n, Complex<Scalar> z, int power) {
  detail::require_nonreal(z);
  if (n < 1) throw InvalidArgument("gn_integral_closed: n must be positive");
  const Scalar pi = boost::math::constants::pi<Scalar>();
  if (power == n) {
    return {Scalar(0), Scalar(4 * n) * boost::math::constants::ln_two<Scalar>() * z.imag()};
  }
  if (power == n - 1) {
    const Scalar sgn = z.imag() > Scalar(0) ? Scalar(1) : Scalar(-1);
    return {Scalar(0), pi * (Scalar(1) + sgn) - arg_cut_positive_axis(z * z)};
  }
  throw InvalidArgument("gn_integral_closed: power must be n or n - 1");
}

template <typename Scalar>
struct GnQuadratureOptions {
  Scalar cutoff_factor = Scalar(50);  // integrate numerically on [0, cutoff_factor * |z|]
  Scalar tolerance = Scalar(1e-10);
};

/// Imaginary part of the integral of g_n mu^power over [R, infinity).
///
/// Uses the binomial expansion in z / mu. The terms k = 0, 1 cancel, which
/// is why the integral converges at all.
template <typename Scalar>
[[nodiscard]] Scalar gn_tail(int n, Complex<Scalar> z, int power, Scalar cutoff) {
  if (!(cutoff > Scalar(4) * std::abs(z))) throw InvalidArgument("gn_tail: cutoff must exceed 4|z|");
  Scalar sum = Scalar(0);
  Scalar binom = Scalar(n);  // C(n + k - 1, k) at k = 1
  Complex<Scalar> zk = z;
  Scalar two_k = Scalar(2);
  for (int k = 2; k < 400; ++k) {
    binom *= Scalar(n + k - 1) / Scalar(k);
    zk *= z;
    two_k *= Scalar(2);
    const int e = n + k - 1 - power;  // integral of mu^(-e - 1) from R to infinity
    const Scalar scale = binom * (two_k - Scalar(2)) * Scalar(2) / (Scalar(e) * std::pow(cutoff, e));
    sum -= scale * zk.imag();
    // bound by |z|^k, not Im z^k, which vanishes at some angles
    if (k > 4 && scale * std::abs(zk) < std::numeric_limits<Scalar>::epsilon() * std::abs(sum)) break;
  }
  return sum;
}

/// Numerical half-line integral of g_n mu^power: adaptive Gauss-Kronrod
/// on [0, R] plus the series tail beyond R.
template <typename Scalar>
[[nodiscard]] Complex<Scalar> gn_integral_numeric(int n, Complex<Scalar> z, int power,
                                                  const GnQuadratureOptions<Scalar>& options = {}) {
  detail::require_nonreal(z);
  if (power < 0 || power > n) throw InvalidArgument("gn_integral_numeric: power must lie in [0, n]");
  const Scalar cutoff = options.cutoff_factor * std::abs(z);
  auto integrand = [n, z, power](Scalar mu) { return g_n(mu, z, n).imag() * detail::ipow(mu, power); };
  std::vector<Scalar> breaks{Scalar(0)};
  for (const Scalar c : {z.real(), Scalar(2) * z.real()}) {
    if (c > Scalar(1e-3) * std::abs(z) && c < cutoff) breaks.push_back(c);
  }
  std::sort(breaks.begin(), breaks.end());
  breaks.push_back(cutoff);
  const Scalar body = adaptive_integrate<Scalar>(integrand, breaks, options.tolerance);
  return {Scalar(0), body + gn_tail(n, z, power, cutoff)};
}

/// Radial integral of one sheet of sign `sign`:
/// i * integral of g_index(sign * mu, e^{i phi}) mu^power over mu > 0.
///
/// Uses g_k(-mu, z) = (-1)^k g_k(mu, -z) and the closed forms.
template <typename Scalar>
[[nodiscard]] Scalar sheet_radial_factor(int index, int power, int sign, Scalar phi) {
  detail::require_open_angle(phi);
  const Complex<Scalar> z = std::polar(Scalar(1), phi) * Scalar(sign);
  const Scalar parity = (sign < 0 && index % 2 != 0) ? Scalar(-1) : Scalar(1);
  return -parity * gn_integral_closed(index, z, power).imag();
}

/// Numerical radial profile of the second-coefficient integrals.
///
/// k = 1 integrates g_n mu^{n-1}; k = 2 integrates g_{n-1} mu^{n-2}. Both
/// equal -2 (pi - phi) for every n.
template <typename Scalar>
[[nodiscard]] Scalar radial_profile(Scalar phi, int n, int k, const GnQuadratureOptions<Scalar>& options = {}) {
  detail::require_open_angle(phi);
  if (n < 2) throw InvalidArgument("radial_profile: n must be at least 2");
  if (k != 1 && k != 2) throw InvalidArgument("radial_profile: k must be 1 or 2");
  const Complex<Scalar> z = std::polar(Scalar(1), phi);
  const int index = k == 1 ? n : n - 1;
  return -gn_integral_numeric(index, z, index - 1, options).imag();
}

/// Closed form of the radial profile.
template <typename Scalar>
[[nodiscard]] Scalar radial_profile_closed(Scalar phi) {
  detail::require_open_angle(phi);
  return Scalar(-2) * (boost::math::constants::pi<Scalar>() - phi);
}

template <typename Scalar>
struct BCoefficients {
  Scalar b1;
  Scalar b0;
};

/// b1 and b0 from the four Weyl densities.
template <typename Scalar>
[[nodiscard]] BCoefficients<Scalar> b_coefficients_from_densities(Scalar a_first_plus, Scalar a_first_minus,
                                                         Scalar a_second_plus, Scalar a_second_minus, int n,
                                                         Scalar phi) {
  detail::require_open_angle(phi);
  const Scalar parity = n % 2 == 0 ? Scalar(1) : Scalar(-1);
  const Scalar pi = boost::math::constants::pi<Scalar>();
  const Scalar ln2 = boost::math::constants::ln_two<Scalar>();
  return {Scalar(-4) * ln2 * Scalar(n - 1) * std::sin(phi) * (a_first_plus + parity * a_first_minus),
          Scalar(-2) * ((pi - phi) * a_second_plus + parity * phi * a_second_minus)};
}

}  // namespace weylcoef

#endif  // WEYLCOEF_GN_HPP
