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

#ifndef WEYLCOEF_TYPES_HPP
#define WEYLCOEF_TYPES_HPP

#include <complex>

#include <Eigen/Dense>

#include "weylcoef/errors.hpp"

namespace weylcoef {

template <typename Scalar>
using Complex = std::complex<Scalar>;

template <typename Scalar>
using CMatrix = Eigen::Matrix<Complex<Scalar>, Eigen::Dynamic, Eigen::Dynamic>;

template <typename Scalar>
using CVector = Eigen::Matrix<Complex<Scalar>, Eigen::Dynamic, 1>;

template <typename Scalar>
using RVector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

/// A point (x, xi) of the cotangent bundle minus the zero section.
template <typename Scalar>
class PhasePoint {
 public:
  PhasePoint(RVector<Scalar> x, RVector<Scalar> xi) : x_(std::move(x)), xi_(std::move(xi)) {
    if (x_.size() != xi_.size()) {
      throw DimensionMismatch("PhasePoint: x and xi must have the same length");
    }
    if (x_.size() < 2) {
      throw InvalidArgument("PhasePoint: dimension must be at least 2");
    }
    if (!(xi_.norm() > Scalar(0))) {
      throw InvalidArgument("PhasePoint: xi must be nonzero");
    }
  }

  [[nodiscard]] const RVector<Scalar>& x() const { return x_; }
  [[nodiscard]] const RVector<Scalar>& xi() const { return xi_; }
  [[nodiscard]] Eigen::Index dim() const { return x_.size(); }

 private:
  RVector<Scalar> x_;
  RVector<Scalar> xi_;
};

/// Largest deviation from Hermitian symmetry, max |M - M*|.
template <typename Derived>
[[nodiscard]] auto hermitian_defect(const Eigen::MatrixBase<Derived>& m) {
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

}  // namespace weylcoef

#endif  // WEYLCOEF_TYPES_HPP
