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

#ifndef WEYLCOEF_WEYL_HPP
#define WEYLCOEF_WEYL_HPP

#include <cmath>
#include <functional>
#include <optional>
#include <vector>

#include <boost/math/constants/constants.hpp>

#include "weylcoef/eigen_jet.hpp"
#include "weylcoef/quadrature.hpp"
#include "weylcoef/symbol.hpp"

namespace weylcoef {

template <typename Scalar>
struct WeylOptions {
  Scalar step = Scalar(1e-3);
  std::optional<Scalar> simplicity_tol;
  Scalar residue_tol = Scalar(1e-6);
};

/// Per-sheet contributions to the second coefficient. They sum to it.
template <typename Scalar>
struct SheetTerms {
  int index = 0;
  Scalar subprincipal = Scalar(0);
  Scalar bracket = Scalar(0);
  Scalar curvature = Scalar(0);
  /// Same curvature contribution through eigenvector derivatives.
  Scalar curvature_eigenvector = Scalar(0);

  [[nodiscard]] Scalar total() const { return subprincipal + bracket + curvature; }
};

template <typename Scalar>
struct SecondWeyl {
  Scalar value = Scalar(0);
  std::vector<SheetTerms<Scalar>> sheets;
};

template <typename Scalar>
struct WeylCoefficients {
  RVector<Scalar> x;
  Scalar a_first_plus = Scalar(0);
  Scalar a_first_minus = Scalar(0);
  Scalar a_second_plus = Scalar(0);
  Scalar a_second_minus = Scalar(0);
  std::vector<SheetTerms<Scalar>> breakdown_plus;   // sheets j > 0
  std::vector<SheetTerms<Scalar>> breakdown_minus;  // sheets j < 0, from -A
};

namespace detail {

template <typename Scalar>
[[nodiscard]] Scalar two_pi_pow(int n) {
  return std::pow(boost::math::constants::two_pi<Scalar>(), n);
}

template <typename Scalar>
[[nodiscard]] Scalar checked_real(Complex<Scalar> z, Scalar scale, Scalar tol, const char* what) {
  if (std::abs(z.imag()) > tol * std::max(Scalar(1), scale)) {
    throw ComplexResidue(std::string(what) + ": imaginary residue " + format_number(static_cast<double>(z.imag())));
  }
  return z.real();
}

template <typename Scalar>
void require_dim(const RVector<Scalar>& x, const CosphereQuadrature<Scalar>& quad) {
  if (x.size() != quad.dim()) throw DimensionMismatch("chart point and quadrature dimensions differ");
}

}  // namespace detail

/// Integral of a degree-0 function q over {h < 1}, for a degree-1 h > 0:
/// (1/n) times the sphere integral of q h^{-n}.
template <typename Scalar, typename HFn, typename QFn>
[[nodiscard]] Scalar region_integral(const HFn& h, const QFn& q, const CosphereQuadrature<Scalar>& quad,
                                     Scalar positivity_tol = Scalar(0)) {
  std::vector<Scalar> terms(quad.size());
  for (std::size_t i = 0; i < quad.size(); ++i) {
    const Scalar hv = h(quad.node(i));
    if (!(hv > positivity_tol)) throw NotElliptic("region_integral: h is not positive on the sphere");
    terms[i] = quad.weight(i) * q(quad.node(i)) * std::pow(hv, -quad.dim());
  }
  return pairwise_sum(terms) / Scalar(quad.dim());
}

/// Region integral for sheet j of a principal symbol. For j < 0 the region
/// is {-h^{(j)} < 1}.
template <typename Scalar>
[[nodiscard]] Scalar region_integral(const SymbolField<Scalar>& principal, const RVector<Scalar>& x, int j,
                                     const std::function<Scalar(const PhasePoint<Scalar>&)>& q,
                                     const CosphereQuadrature<Scalar>& quad, const WeylOptions<Scalar>& options = {}) {
  detail::require_dim(x, quad);
  if (j == 0) throw InvalidArgument("region_integral: sheet index must be nonzero");
  std::vector<Scalar> terms(quad.size());
  for (std::size_t i = 0; i < quad.size(); ++i) {
    const PhasePoint<Scalar> p(x, quad.node(i));
    const auto dec = eigen_decompose(principal(p), options.simplicity_tol);
    const Scalar hv = std::abs(dec.sheet(j).h);
    terms[i] = quad.weight(i) * q(p) * std::pow(hv, -quad.dim());
  }
  return pairwise_sum(terms) / Scalar(quad.dim());
}

/// First Weyl density for positive eigenvalues. Apply to the negated
/// symbol for the negative side.
template <typename Scalar>
[[nodiscard]] Scalar first_weyl(const SymbolField<Scalar>& principal, const RVector<Scalar>& x,
                                const CosphereQuadrature<Scalar>& quad, const WeylOptions<Scalar>& options = {}) {
  detail::require_dim(x, quad);
  const int n = quad.dim();
  std::vector<Scalar> terms(quad.size());
  std::optional<int> m_plus;
  for (std::size_t i = 0; i < quad.size(); ++i) {
    const auto dec = eigen_decompose(principal(PhasePoint<Scalar>(x, quad.node(i))), options.simplicity_tol);
    if (m_plus && *m_plus != dec.m_plus) throw NotElliptic("first_weyl: sheet count varies over the cosphere");
    m_plus = dec.m_plus;
    Scalar s = Scalar(0);
    for (int j = 1; j <= dec.m_plus; ++j) s += std::pow(dec.sheet(j).h, -n);
    terms[i] = quad.weight(i) * s;
  }
  return pairwise_sum(terms) / detail::two_pi_pow<Scalar>(n);
}

/// Second Weyl density for positive eigenvalues with per-sheet breakdown.
///
/// Per sheet the integrand is v* A_sub v - (i/2){v*, A_1 - h, v} plus the
/// curvature term (i/(n-1)) h {v*, v}. The curvature term is evaluated as
/// -(i/(n-1)) h tr{P, P, P}, which needs no eigenvector phase.
template <typename Scalar>
[[nodiscard]] SecondWeyl<Scalar> second_weyl(const ModelSymbols<Scalar>& symbols, const RVector<Scalar>& x,
                                             const CosphereQuadrature<Scalar>& quad,
                                             const WeylOptions<Scalar>& options = {}) {
  detail::require_dim(x, quad);
  const int n = quad.dim();
  const Complex<Scalar> I(0, 1);
  const Scalar prefactor = -Scalar(n - 1) / detail::two_pi_pow<Scalar>(n);

  EigenJetOptions<Scalar> jet_options;
  jet_options.step = options.step;
  jet_options.simplicity_tol = options.simplicity_tol;

  struct Acc {
    std::vector<Complex<Scalar>> sub, bracket, curv, curv_vec;
  };
  std::vector<Acc> acc;
  int m_plus = -1;
  for (std::size_t i = 0; i < quad.size(); ++i) {
    const PhasePoint<Scalar> p(x, quad.node(i));
    const EigenJet<Scalar> ej = eigen_jet(symbols.principal, p, jet_options);
    if (m_plus < 0) {
      m_plus = ej.m_plus;
      acc.resize(static_cast<std::size_t>(m_plus));
    } else if (m_plus != ej.m_plus) {
      throw NotElliptic("second_weyl: sheet count varies over the cosphere");
    }
    const CMatrix<Scalar> a1 = symbols.principal(p);
    const CMatrix<Scalar> asub = symbols.subprincipal(p);
    for (int j = 1; j <= ej.m_plus; ++j) {
      const SheetJet<Scalar>& s = ej.sheet(j);
      const Scalar w = prefactor * quad.weight(i) * std::pow(s.h, -n);
      const CVector<Scalar> v = s.eigenvector.value;
      const CMatrix<Scalar> shifted_a1 = a1 - s.h * CMatrix<Scalar>::Identity(a1.rows(), a1.cols());
      const Complex<Scalar> sub = v.dot(asub * v);
      const Complex<Scalar> br =
          -I / Scalar(2) * generalized_bracket(adjoint(s.eigenvector), shifted_a1, s.eigenvector)(0, 0);
      const Complex<Scalar> curv = -I / Scalar(n - 1) * s.h * projection_curvature(s);
      const Complex<Scalar> curv_vec = I / Scalar(n - 1) * s.h * eigenvector_curvature(s);
      auto& a = acc[static_cast<std::size_t>(j - 1)];
      a.sub.push_back(w * sub);
      a.bracket.push_back(w * br);
      a.curv.push_back(w * curv);
      a.curv_vec.push_back(w * curv_vec);
    }
  }

  SecondWeyl<Scalar> out;
  for (std::size_t k = 0; k < acc.size(); ++k) {
    const Complex<Scalar> sub = pairwise_sum(acc[k].sub);
    const Complex<Scalar> br = pairwise_sum(acc[k].bracket);
    const Complex<Scalar> curv = pairwise_sum(acc[k].curv);
    const Complex<Scalar> curv_vec = pairwise_sum(acc[k].curv_vec);
    const Scalar scale = std::abs(sub) + std::abs(br) + std::abs(curv);
    static_cast<void>(detail::checked_real(sub + br + curv, scale, options.residue_tol, "second_weyl"));
    SheetTerms<Scalar> t;
    t.index = static_cast<int>(k) + 1;
    t.subprincipal = detail::checked_real(sub, scale, options.residue_tol, "second_weyl subprincipal");
    t.bracket = detail::checked_real(br, scale, options.residue_tol, "second_weyl bracket");
    t.curvature = detail::checked_real(curv, scale, options.residue_tol, "second_weyl curvature");
    t.curvature_eigenvector = curv_vec.real();
    out.value += t.total();
    out.sheets.push_back(t);
  }
  return out;
}

/// Both signs of both densities at one chart point. The negative side uses
/// the operator -A; its sheets are reported with negative indices.
template <typename Scalar>
[[nodiscard]] WeylCoefficients<Scalar> weyl_coefficients(const ModelSymbols<Scalar>& symbols,
                                                         const RVector<Scalar>& x,
                                                         const CosphereQuadrature<Scalar>& quad,
                                                         const WeylOptions<Scalar>& options = {}) {
  const ModelSymbols<Scalar> flipped = symbols.negated();
  WeylCoefficients<Scalar> out;
  out.x = x;
  out.a_first_plus = first_weyl(symbols.principal, x, quad, options);
  out.a_first_minus = first_weyl(flipped.principal, x, quad, options);
  SecondWeyl<Scalar> plus = second_weyl(symbols, x, quad, options);
  SecondWeyl<Scalar> minus = second_weyl(flipped, x, quad, options);
  out.a_second_plus = plus.value;
  out.a_second_minus = minus.value;
  out.breakdown_plus = std::move(plus.sheets);
  out.breakdown_minus = std::move(minus.sheets);
  for (auto& t : out.breakdown_minus) t.index = -t.index;
  return out;
}

/// The two per-sheet constants in eigenvector form and in projection form.
template <typename Scalar>
struct ProjectionFormCheck {
  Complex<Scalar> c1_eigenvector;
  Complex<Scalar> c1_projection;
  Complex<Scalar> c2_eigenvector;
  Complex<Scalar> c2_projection;
};

/// Computes the subprincipal-plus-bracket constant and the curvature
/// constant of sheet j > 0 twice: once from v and its derivatives, once
/// from P and its derivatives.
template <typename Scalar>
[[nodiscard]] ProjectionFormCheck<Scalar> projection_form_check(const ModelSymbols<Scalar>& symbols,
                                                                const RVector<Scalar>& x, int j,
                                                                const CosphereQuadrature<Scalar>& quad,
                                                                const WeylOptions<Scalar>& options = {}) {
  detail::require_dim(x, quad);
  if (j <= 0) throw InvalidArgument("projection_form_check: sheet index must be positive");
  const int n = quad.dim();
  const Complex<Scalar> I(0, 1);
  EigenJetOptions<Scalar> jet_options;
  jet_options.step = options.step;
  jet_options.simplicity_tol = options.simplicity_tol;

  std::vector<Complex<Scalar>> c1v, c1p, c2v, c2p;
  for (std::size_t i = 0; i < quad.size(); ++i) {
    const PhasePoint<Scalar> p(x, quad.node(i));
    const EigenJet<Scalar> ej = eigen_jet(symbols.principal, p, jet_options);
    const SheetJet<Scalar>& s = ej.sheet(j);
    const CMatrix<Scalar> a1 = symbols.principal(p);
    const CMatrix<Scalar> asub = symbols.subprincipal(p);
    const CMatrix<Scalar> g = a1 - s.h * CMatrix<Scalar>::Identity(a1.rows(), a1.cols());
    // weight of the region integral (1/n) w h^{-n}
    const Scalar w = quad.weight(i) * std::pow(s.h, -n) / Scalar(n);
    const CVector<Scalar> v = s.eigenvector.value;
    const MatrixJet<Scalar> vstar = adjoint(s.eigenvector);
    c1v.push_back(w * (v.dot(asub * v) - I / Scalar(2) * generalized_bracket(vstar, g, s.eigenvector)(0, 0)));
    c1p.push_back(w * ((asub * s.projection.value).trace() -
                       I / Scalar(2) * generalized_bracket(s.projection, g, s.projection).trace()));
    c2v.push_back(w * s.h * poisson_bracket(vstar, s.eigenvector)(0, 0));
    c2p.push_back(w * s.h * projection_curvature(s));
  }
  const Scalar k1 = -Scalar(n) * Scalar(n - 1);
  return {k1 * pairwise_sum(c1v), k1 * pairwise_sum(c1p), -Scalar(n) * I * pairwise_sum(c2v),
          Scalar(n) * I * pairwise_sum(c2p)};
}

}  // namespace weylcoef

#endif  // WEYLCOEF_WEYL_HPP
