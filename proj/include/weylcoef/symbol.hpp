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

#ifndef WEYLCOEF_SYMBOL_HPP
#define WEYLCOEF_SYMBOL_HPP

#include <array>
#include <functional>
#include <utility>
#include <vector>

#include "weylcoef/types.hpp"

namespace weylcoef {

/// Value and first phase-space derivatives of a matrix-valued function.
///
/// Any shape is allowed, so row and column vectors are jets too. That lets
/// the eigenvector brackets reuse the matrix bracket code.
template <typename Scalar>
struct MatrixJet {
  CMatrix<Scalar> value;
  std::vector<CMatrix<Scalar>> dx;
  std::vector<CMatrix<Scalar>> dxi;

  [[nodiscard]] Eigen::Index dim() const { return static_cast<Eigen::Index>(dx.size()); }
};

template <typename Scalar>
[[nodiscard]] MatrixJet<Scalar> adjoint(const MatrixJet<Scalar>& jet) {
  MatrixJet<Scalar> out{jet.value.adjoint(), {}, {}};
  for (const auto& d : jet.dx) out.dx.push_back(d.adjoint());
  for (const auto& d : jet.dxi) out.dxi.push_back(d.adjoint());
  return out;
}

/// Matrix field on phase space with homogeneity degree in xi.
template <typename Scalar>
class SymbolField {
 public:
  using Point = PhasePoint<Scalar>;
  using Evaluator = std::function<CMatrix<Scalar>(const Point&)>;
  using JetEvaluator = std::function<MatrixJet<Scalar>(const Point&)>;

  SymbolField(Eigen::Index m, int degree, Evaluator evaluator, JetEvaluator analytic = {})
      : m_(m), degree_(degree), evaluator_(std::move(evaluator)), analytic_(std::move(analytic)) {
    if (m_ < 1) throw InvalidArgument("SymbolField: matrix size must be positive");
    if (!evaluator_) throw InvalidArgument("SymbolField: missing evaluator");
  }

  [[nodiscard]] Eigen::Index size() const { return m_; }
  [[nodiscard]] int degree() const { return degree_; }
  [[nodiscard]] bool has_analytic_derivatives() const { return static_cast<bool>(analytic_); }

  [[nodiscard]] CMatrix<Scalar> operator()(const Point& p) const {
    CMatrix<Scalar> value = evaluator_(p);
    if (value.rows() != m_ || value.cols() != m_) {
      throw DimensionMismatch("SymbolField: evaluator returned a matrix of the wrong size");
    }
    return value;
  }

  [[nodiscard]] MatrixJet<Scalar> analytic_jet(const Point& p) const { return analytic_(p); }

  /// The field multiplied by a real constant, derivatives included.
  [[nodiscard]] SymbolField scaled(Scalar c) const {
    Evaluator e = [f = evaluator_, c](const Point& p) -> CMatrix<Scalar> { return f(p) * c; };
    JetEvaluator j;
    if (analytic_) {
      j = [g = analytic_, c](const Point& p) {
        MatrixJet<Scalar> jet = g(p);
        jet.value *= c;
        for (auto& d : jet.dx) d *= c;
        for (auto& d : jet.dxi) d *= c;
        return jet;
      };
    }
    return SymbolField(m_, degree_, std::move(e), std::move(j));
  }

 private:
  Eigen::Index m_;
  int degree_;
  Evaluator evaluator_;
  JetEvaluator analytic_;
};

/// Principal and subprincipal symbol of one operator.
template <typename Scalar>
struct ModelSymbols {
  SymbolField<Scalar> principal;
  SymbolField<Scalar> subprincipal;

  /// Symbols of the operator -A.
  [[nodiscard]] ModelSymbols negated() const {
    return {principal.scaled(Scalar(-1)), subprincipal.scaled(Scalar(-1))};
  }
};

/// Step used for the xi-derivatives: relative to |xi|.
template <typename Scalar>
[[nodiscard]] Scalar xi_step(const PhasePoint<Scalar>& p, Scalar step) {
  return step * p.xi().norm();
}

/// Returns p shifted by h along coordinate `axis` of x (is_xi false) or xi.
template <typename Scalar>
[[nodiscard]] PhasePoint<Scalar> shifted(const PhasePoint<Scalar>& p, bool is_xi, Eigen::Index axis,
                                         Scalar h) {
  RVector<Scalar> x = p.x();
  RVector<Scalar> xi = p.xi();
  (is_xi ? xi : x)(axis) += h;
  return PhasePoint<Scalar>(std::move(x), std::move(xi));
}

/// Five-point central difference of any matrix-valued function of phase space.
///
/// x-steps are `step`; xi-steps are `step * |xi|`. Truncation error is
/// O(step^4) for smooth functions.
template <typename Scalar, typename Fn>
[[nodiscard]] MatrixJet<Scalar> finite_difference_jet(const Fn& f, const PhasePoint<Scalar>& p,
                                                      Scalar step, bool symmetrize) {
  if (!(step > Scalar(0))) throw InvalidArgument("finite_difference_jet: step must be positive");
  const Eigen::Index n = p.dim();
  MatrixJet<Scalar> jet;
  jet.value = f(p);
  constexpr std::array<int, 4> kOffsets{-2, -1, 1, 2};
  constexpr std::array<int, 4> kWeights{1, -8, 8, -1};
  for (bool is_xi : {false, true}) {
    const Scalar h = is_xi ? xi_step(p, step) : step;
    auto& out = is_xi ? jet.dxi : jet.dx;
    for (Eigen::Index a = 0; a < n; ++a) {
      CMatrix<Scalar> d = CMatrix<Scalar>::Zero(jet.value.rows(), jet.value.cols());
      for (std::size_t s = 0; s < kOffsets.size(); ++s) {
        d += Scalar(kWeights[s]) * f(shifted(p, is_xi, a, Scalar(kOffsets[s]) * h));
      }
      d /= Scalar(12) * h;
      if (symmetrize) d = (d + d.adjoint()).eval() * Scalar(0.5);
      out.push_back(std::move(d));
    }
  }
  return jet;
}

/// Jet of a symbol field: analytic derivatives when the field has them.
template <typename Scalar>
[[nodiscard]] MatrixJet<Scalar> symbol_jet(const SymbolField<Scalar>& field, const PhasePoint<Scalar>& p,
                                           Scalar step = Scalar(1e-3)) {
  if (field.has_analytic_derivatives()) return field.analytic_jet(p);
  return finite_difference_jet<Scalar>([&field](const PhasePoint<Scalar>& q) { return field(q); }, p, step,
                                       true);
}

namespace detail {

template <typename Scalar>
void check_same_point(const MatrixJet<Scalar>& a, const MatrixJet<Scalar>& b) {
  if (a.dx.size() != b.dx.size() || a.dxi.size() != b.dxi.size() || a.dx.size() != a.dxi.size()) {
    throw DimensionMismatch("bracket: jets have different phase-space dimension");
  }
}

}  // namespace detail

/// sum_a F_{x^a} G H_{xi_a} - F_{xi_a} G H_{x^a}.
template <typename Scalar>
[[nodiscard]] CMatrix<Scalar> generalized_bracket(const MatrixJet<Scalar>& f, const CMatrix<Scalar>& g,
                                                  const MatrixJet<Scalar>& h) {
  detail::check_same_point(f, h);
  if (f.value.cols() != g.rows() || g.cols() != h.value.rows()) {
    throw DimensionMismatch("generalized_bracket: incompatible matrix shapes");
  }
  CMatrix<Scalar> out = CMatrix<Scalar>::Zero(f.value.rows(), h.value.cols());
  for (std::size_t a = 0; a < f.dx.size(); ++a) {
    out.noalias() += f.dx[a] * g * h.dxi[a];
    out.noalias() -= f.dxi[a] * g * h.dx[a];
  }
  return out;
}

/// sum_a P_{x^a} R_{xi_a} - P_{xi_a} R_{x^a}.
template <typename Scalar>
[[nodiscard]] CMatrix<Scalar> poisson_bracket(const MatrixJet<Scalar>& p, const MatrixJet<Scalar>& r) {
  detail::check_same_point(p, r);
  if (p.value.cols() != r.value.rows()) {
    throw DimensionMismatch("poisson_bracket: incompatible matrix shapes");
  }
  CMatrix<Scalar> out = CMatrix<Scalar>::Zero(p.value.rows(), r.value.cols());
  for (std::size_t a = 0; a < p.dx.size(); ++a) {
    out.noalias() += p.dx[a] * r.dxi[a];
    out.noalias() -= p.dxi[a] * r.dx[a];
  }
  return out;
}

}  // namespace weylcoef

#endif  // WEYLCOEF_SYMBOL_HPP
