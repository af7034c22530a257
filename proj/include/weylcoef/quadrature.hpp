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

#ifndef WEYLCOEF_QUADRATURE_HPP
#define WEYLCOEF_QUADRATURE_HPP

#include <cmath>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include <boost/math/constants/constants.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/legendre.hpp>

#include "weylcoef/types.hpp"

namespace weylcoef {

/// Sum in a fixed binary-tree order. Bit-stable for a given input order.
template <typename T>
[[nodiscard]] T pairwise_sum(const T* data, std::size_t count) {
  if (count == 0) return T(0);
  if (count <= 8) {
    T acc = data[0];
    for (std::size_t i = 1; i < count; ++i) acc += data[i];
    return acc;
  }
  const std::size_t half = count / 2;
  return pairwise_sum(data, half) + pairwise_sum(data + half, count - half);
}

template <typename T>
[[nodiscard]] T pairwise_sum(const std::vector<T>& values) {
  return pairwise_sum(values.data(), values.size());
}

/// Gauss-Legendre nodes and weights on [-1, 1].
template <typename Scalar>
[[nodiscard]] std::pair<std::vector<Scalar>, std::vector<Scalar>> gauss_legendre(int order) {
  if (order < 1) throw InvalidArgument("gauss_legendre: order must be positive");
  const std::vector<Scalar> positive = boost::math::legendre_p_zeros<Scalar>(order);
  std::vector<Scalar> nodes;
  std::vector<Scalar> weights;
  auto weight = [order](Scalar t) {
    const Scalar d = boost::math::legendre_p_prime(order, t);
    return Scalar(2) / ((Scalar(1) - t * t) * d * d);
  };
  for (auto it = positive.rbegin(); it != positive.rend(); ++it) {
    if (*it == Scalar(0)) continue;
    nodes.push_back(-*it);
    weights.push_back(weight(*it));
  }
  if (order % 2 == 1) {
    nodes.push_back(Scalar(0));
    weights.push_back(weight(Scalar(0)));
  }
  for (const Scalar t : positive) {
    if (t == Scalar(0)) continue;
    nodes.push_back(t);
    weights.push_back(weight(t));
  }
  return {std::move(nodes), std::move(weights)};
}

/// Quadrature on the Euclidean unit sphere of the cotangent fibre.
///
/// n = 2: trapezoid on a uniform angle grid. n = 3: Gauss-Legendre in the
/// polar cosine times a trapezoid in azimuth.
template <typename Scalar>
class CosphereQuadrature {
 public:
  CosphereQuadrature(int n, int n_angles) : n_(n), n_angles_(n_angles) {
    if (n_angles < 16 || n_angles % 2 != 0) {
      throw InvalidArgument("CosphereQuadrature: n_angles must be even and at least 16");
    }
    const Scalar two_pi = boost::math::constants::two_pi<Scalar>();
    if (n == 2) {
      for (int k = 0; k < n_angles; ++k) {
        const Scalar t = two_pi * Scalar(k) / Scalar(n_angles);
        RVector<Scalar> w(2);
        w << std::cos(t), std::sin(t);
        nodes_.push_back(std::move(w));
        weights_.push_back(two_pi / Scalar(n_angles));
      }
    } else if (n == 3) {
      const auto [cosines, gl_weights] = gauss_legendre<Scalar>(n_angles / 2);
      for (std::size_t i = 0; i < cosines.size(); ++i) {
        const Scalar c = cosines[i];
        const Scalar s = std::sqrt(Scalar(1) - c * c);
        for (int k = 0; k < n_angles; ++k) {
          const Scalar t = two_pi * Scalar(k) / Scalar(n_angles);
          RVector<Scalar> w(3);
          w << s * std::cos(t), s * std::sin(t), c;
          nodes_.push_back(std::move(w));
          weights_.push_back(gl_weights[i] * two_pi / Scalar(n_angles));
        }
      }
    } else {
      throw InvalidArgument("CosphereQuadrature: only n = 2 and n = 3 are supported");
    }
  }

  [[nodiscard]] int dim() const { return n_; }
  [[nodiscard]] int n_angles() const { return n_angles_; }
  [[nodiscard]] std::size_t size() const { return nodes_.size(); }
  [[nodiscard]] const RVector<Scalar>& node(std::size_t i) const { return nodes_[i]; }
  [[nodiscard]] Scalar weight(std::size_t i) const { return weights_[i]; }

 private:
  int n_;
  int n_angles_;
  std::vector<RVector<Scalar>> nodes_;
  std::vector<Scalar> weights_;
};

/// Adaptive Gauss-Kronrod (15/31) on [a, b], split at the given interior points.
///
/// Throws QuadratureFailure when the estimated error exceeds
/// tol * max(1, |result|). The rule stops on an error relative to the
/// integral of |f|, so a cancelling integrand is retried with a tighter
/// inner tolerance before giving up.
template <typename Scalar, typename Fn>
[[nodiscard]] Scalar adaptive_integrate(const Fn& f, std::vector<Scalar> breaks, Scalar tol,
                                        unsigned max_depth = 20) {
  using std::abs;
  const Scalar floor = Scalar(100) * std::numeric_limits<Scalar>::epsilon();
  Scalar total = Scalar(0);
  Scalar total_error = Scalar(0);
  for (Scalar inner = tol;; inner /= Scalar(100)) {
    total = Scalar(0);
    total_error = Scalar(0);
    for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
      if (!(breaks[i + 1] > breaks[i])) continue;
      Scalar error = Scalar(0);
      total += boost::math::quadrature::gauss_kronrod<Scalar, 31>::integrate(f, breaks[i], breaks[i + 1], max_depth,
                                                                            std::max(inner, floor), &error);
      total_error += error;
    }
    if (!std::isfinite(static_cast<double>(total))) break;
    if (total_error <= tol * std::max(Scalar(1), abs(total))) return total;
    if (inner <= floor) break;
  }
  throw QuadratureFailure("adaptive_integrate: error estimate " + format_number(static_cast<double>(total_error)) +
                          " exceeds tolerance");
}

}  // namespace weylcoef

#endif  // WEYLCOEF_QUADRATURE_HPP
