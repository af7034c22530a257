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

#ifndef WEYLCOEF_RESOLVENT_HPP
#define WEYLCOEF_RESOLVENT_HPP

#include <cmath>
#include <map>
#include <optional>
#include <vector>

#include <boost/math/constants/constants.hpp>

#include "weylcoef/eigen_jet.hpp"
#include "weylcoef/gn.hpp"
#include "weylcoef/quadrature.hpp"
#include "weylcoef/symbol.hpp"
#include "weylcoef/weyl.hpp"

namespace weylcoef {

/// z = lambda e^{i phi} in the open upper half plane.
template <typename Scalar>
class SpectralParameter {
 public:
  SpectralParameter(Scalar lambda, Scalar phi) : lambda_(lambda), phi_(phi) {
    if (!(lambda > Scalar(0))) throw InvalidArgument("SpectralParameter: lambda must be positive");
    detail::require_open_angle(phi);
  }
  [[nodiscard]] Scalar lambda() const { return lambda_; }
  [[nodiscard]] Scalar phi() const { return phi_; }
  [[nodiscard]] Complex<Scalar> z() const { return std::polar(lambda_, phi_); }

 private:
  Scalar lambda_;
  Scalar phi_;
};

template <typename Scalar>
struct ResolventOptions {
  Scalar step = Scalar(1e-3);
  std::optional<Scalar> simplicity_tol;
  Scalar singular_tol = Scalar(1e-12);  // relative to max(1, |z|)
  Scalar residue_tol = Scalar(1e-8);
};

namespace detail {

template <typename Scalar>
void check_resolvent_set(const Eigen::Matrix<Scalar, Eigen::Dynamic, 1>& eigenvalues, Complex<Scalar> z,
                         Scalar tol) {
  Scalar dist = std::numeric_limits<Scalar>::infinity();
  for (Eigen::Index k = 0; k < eigenvalues.size(); ++k) {
    dist = std::min(dist, std::abs(Complex<Scalar>(eigenvalues(k)) - z));
  }
  if (dist < tol * std::max(Scalar(1), std::abs(z))) {
    throw SingularResolvent("spectral parameter lies on the spectrum of the principal symbol");
  }
}

template <typename Scalar>
[[nodiscard]] EigenJetOptions<Scalar> jet_options(const ResolventOptions<Scalar>& o) {
  EigenJetOptions<Scalar> j;
  j.step = o.step;
  j.simplicity_tol = o.simplicity_tol;
  return j;
}

template <typename Scalar>
void check_eigen_jet_resolvent(const EigenJet<Scalar>& ej, Complex<Scalar> z, Scalar tol) {
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> h(static_cast<Eigen::Index>(ej.sheets.size()));
  for (std::size_t k = 0; k < ej.sheets.size(); ++k) h(static_cast<Eigen::Index>(k)) = ej.sheets[k].h;
  check_resolvent_set(h, z, tol);
}

}  // namespace detail

/// Leading two terms of the Weyl symbol of (A - z)^{-1}:
/// R - R A_sub R + (i/2){R, A_1 - z, R} with R = (A_1 - z)^{-1}.
///
/// Derivatives of R come from dR = -R dA_1 R, so no eigenvectors are used.
template <typename Scalar>
[[nodiscard]] CMatrix<Scalar> resolvent_symbol(const ModelSymbols<Scalar>& symbols, const PhasePoint<Scalar>& p,
                                               Complex<Scalar> z, const ResolventOptions<Scalar>& options = {}) {
  const MatrixJet<Scalar> a = symbol_jet(symbols.principal, p, options.step);
  const Eigen::Index m = a.value.rows();
  Eigen::SelfAdjointEigenSolver<CMatrix<Scalar>> solver(a.value, Eigen::EigenvaluesOnly);
  detail::check_resolvent_set<Scalar>(solver.eigenvalues(), z, options.singular_tol);
  const CMatrix<Scalar> shifted_a = a.value - z * CMatrix<Scalar>::Identity(m, m);
  MatrixJet<Scalar> r;
  r.value = shifted_a.partialPivLu().inverse();
  for (const auto& d : a.dx) r.dx.push_back(-r.value * d * r.value);
  for (const auto& d : a.dxi) r.dxi.push_back(-r.value * d * r.value);
  const Complex<Scalar> half_i(0, Scalar(0.5));
  return r.value - r.value * symbols.subprincipal(p) * r.value + half_i * generalized_bracket(r, shifted_a, r);
}

/// Trace of the resolvent symbol as a single sum over sheets.
template <typename Scalar>
[[nodiscard]] Complex<Scalar> trace_resolvent_symbol(const ModelSymbols<Scalar>& symbols,
                                                     const PhasePoint<Scalar>& p, Complex<Scalar> z,
                                                     const ResolventOptions<Scalar>& options = {}) {
  const EigenJet<Scalar> ej = eigen_jet(symbols.principal, p, detail::jet_options(options));
  detail::check_eigen_jet_resolvent(ej, z, options.singular_tol);
  const CMatrix<Scalar> a1 = symbols.principal(p);
  const CMatrix<Scalar> asub = symbols.subprincipal(p);
  const Complex<Scalar> I(0, 1);
  Complex<Scalar> total(0);
  for (const auto& s : ej.sheets) {
    const Complex<Scalar> d = Complex<Scalar>(s.h) - z;
    const CMatrix<Scalar> g = a1 - s.h * CMatrix<Scalar>::Identity(a1.rows(), a1.cols());
    const Complex<Scalar> bracket = generalized_bracket(s.projection, g, s.projection).trace();
    total += Scalar(1) / d - (asub * s.projection.value).trace() / (d * d) + I / Scalar(2) * bracket / (d * d) +
             I * projection_curvature(s) / d;
  }
  return total;
}

/// Leading two terms of the trace of the symbol of (A - z)^{1-n}.
template <typename Scalar>
[[nodiscard]] Complex<Scalar> power_trace_symbol(const ModelSymbols<Scalar>& symbols, const PhasePoint<Scalar>& p,
                                                 Complex<Scalar> z, int n,
                                                 const ResolventOptions<Scalar>& options = {}) {
  if (n < 2) throw InvalidArgument("power_trace_symbol: n must be at least 2");
  const EigenJet<Scalar> ej = eigen_jet(symbols.principal, p, detail::jet_options(options));
  detail::check_eigen_jet_resolvent(ej, z, options.singular_tol);
  const CMatrix<Scalar> a1 = symbols.principal(p);
  const CMatrix<Scalar> asub = symbols.subprincipal(p);
  const Complex<Scalar> I(0, 1);
  Complex<Scalar> total(0);
  for (const auto& s : ej.sheets) {
    const Complex<Scalar> d = Complex<Scalar>(s.h) - z;
    const Complex<Scalar> d_n1 = detail::ipow(d, n - 1);
    const CMatrix<Scalar> g = a1 - s.h * CMatrix<Scalar>::Identity(a1.rows(), a1.cols());
    const Complex<Scalar> bracket = generalized_bracket(s.projection, g, s.projection).trace();
    total += Scalar(1) / d_n1 - Scalar(n - 1) * (asub * s.projection.value).trace() / (d_n1 * d) +
             I / Scalar(2) * Scalar(n - 1) * bracket / (d_n1 * d) + I * projection_curvature(s) / d_n1;
  }
  return total;
}

/// Per-sheet symbol terms of the trace of (A - z)^{1-n}.
template <typename Scalar>
struct SheetSymbolTerms {
  int index = 0;
  Complex<Scalar> s_first;   // (h - z)^{1-n}
  Complex<Scalar> s_second;  // s_second_bracket + s_second_curvature
  Complex<Scalar> s_second_bracket;
  Complex<Scalar> s_second_curvature;
};

template <typename Scalar>
[[nodiscard]] std::vector<SheetSymbolTerms<Scalar>> resolvent_symbol_terms(const ModelSymbols<Scalar>& symbols,
                                                                           const PhasePoint<Scalar>& p,
                                                                           Complex<Scalar> z, int n,
                                                                           const ResolventOptions<Scalar>& options = {}) {
  if (n < 2) throw InvalidArgument("resolvent_symbol_terms: n must be at least 2");
  const EigenJet<Scalar> ej = eigen_jet(symbols.principal, p, detail::jet_options(options));
  detail::check_eigen_jet_resolvent(ej, z, options.singular_tol);
  const CMatrix<Scalar> a1 = symbols.principal(p);
  const CMatrix<Scalar> asub = symbols.subprincipal(p);
  const Complex<Scalar> I(0, 1);
  std::vector<SheetSymbolTerms<Scalar>> out;
  for (const auto& s : ej.sheets) {
    const Complex<Scalar> d = Complex<Scalar>(s.h) - z;
    const Complex<Scalar> d_n1 = detail::ipow(d, n - 1);
    const CMatrix<Scalar> g = a1 - s.h * CMatrix<Scalar>::Identity(a1.rows(), a1.cols());
    const Complex<Scalar> first_part =
        (asub * s.projection.value).trace() - I / Scalar(2) * generalized_bracket(s.projection, g, s.projection).trace();
    SheetSymbolTerms<Scalar> t;
    t.index = s.index;
    t.s_first = Scalar(1) / d_n1;
    t.s_second_bracket = -Scalar(n - 1) * first_part / (d_n1 * d);
    t.s_second_curvature = I * s.h * projection_curvature(s) / (s.h * d_n1);
    t.s_second = t.s_second_bracket + t.s_second_curvature;
    out.push_back(t);
  }
  return out;
}

/// Angular constants of one sheet, integrated over that sheet's cosphere.
template <typename Scalar>
struct SheetConstants {
  int index = 0;
  Scalar cosphere_measure = Scalar(0);  // integral of 1
  Scalar c1 = Scalar(0);                // subprincipal and bracket part
  Scalar c2 = Scalar(0);                // curvature part
};

template <typename Scalar>
struct SheetB {
  int index = 0;
  Scalar b1 = Scalar(0);
  Scalar b0 = Scalar(0);
  Scalar radial1 = Scalar(0);
  Scalar radial2 = Scalar(0);
};

template <typename Scalar>
struct BResult {
  Scalar phi = Scalar(0);
  Scalar b1 = Scalar(0);
  Scalar b0 = Scalar(0);
  std::vector<SheetB<Scalar>> sheets;
};

/// Cosphere constants of every sheet at x. They do not depend on the angle.
template <typename Scalar>
[[nodiscard]] std::vector<SheetConstants<Scalar>> sheet_constants(const ModelSymbols<Scalar>& symbols,
                                                                  const RVector<Scalar>& x,
                                                                  const CosphereQuadrature<Scalar>& quad,
                                                                  const ResolventOptions<Scalar>& options = {}) {
  detail::require_dim(x, quad);
  const int n = quad.dim();
  const Complex<Scalar> I(0, 1);
  std::vector<std::vector<Scalar>> measure;
  std::vector<std::vector<Complex<Scalar>>> c1, c2;
  std::vector<int> indices;
  for (std::size_t i = 0; i < quad.size(); ++i) {
    const PhasePoint<Scalar> p(x, quad.node(i));
    const EigenJet<Scalar> ej = eigen_jet(symbols.principal, p, detail::jet_options(options));
    if (indices.empty()) {
      for (const auto& s : ej.sheets) indices.push_back(s.index);
      measure.resize(indices.size());
      c1.resize(indices.size());
      c2.resize(indices.size());
    } else if (static_cast<int>(indices.size()) != static_cast<int>(ej.sheets.size()) || ej.sheets[0].index != indices[0]) {
      throw NotElliptic("sheet_constants: sheet structure varies over the cosphere");
    }
    const CMatrix<Scalar> a1 = symbols.principal(p);
    const CMatrix<Scalar> asub = symbols.subprincipal(p);
    for (std::size_t k = 0; k < ej.sheets.size(); ++k) {
      const auto& s = ej.sheets[k];
      const Scalar w = quad.weight(i) * std::pow(std::abs(s.h), -n);
      const CMatrix<Scalar> g = a1 - s.h * CMatrix<Scalar>::Identity(a1.rows(), a1.cols());
      const Complex<Scalar> first_part = (asub * s.projection.value).trace() -
                                         I / Scalar(2) * generalized_bracket(s.projection, g, s.projection).trace();
      measure[k].push_back(w);
      c1[k].push_back(w * first_part);
      c2[k].push_back(w * s.h * projection_curvature(s));
    }
  }
  std::vector<SheetConstants<Scalar>> out;
  for (std::size_t k = 0; k < indices.size(); ++k) {
    const Complex<Scalar> v1 = -Scalar(n - 1) * pairwise_sum(c1[k]);
    const Complex<Scalar> v2 = I * pairwise_sum(c2[k]);
    const Scalar scale = std::abs(v1) + std::abs(v2);
    SheetConstants<Scalar> c;
    c.index = indices[k];
    c.cosphere_measure = pairwise_sum(measure[k]);
    c.c1 = detail::checked_real(v1, scale, options.residue_tol, "sheet_constants c1");
    c.c2 = detail::checked_real(v2, scale, options.residue_tol, "sheet_constants c2");
    out.push_back(c);
  }
  return out;
}

/// b1 and b0 at angle phi from precomputed sheet constants.
///
/// Each xi-integral factors into a cosphere constant times a radial
/// integral, and the radial integrals have closed forms.
template <typename Scalar>
[[nodiscard]] BResult<Scalar> b_coefficients(const std::vector<SheetConstants<Scalar>>& constants, int n, Scalar phi) {
  detail::require_open_angle(phi);
  BResult<Scalar> out;
  out.phi = phi;
  std::vector<Scalar> b1, b0;
  for (const auto& c : constants) {
    const int sign = c.index > 0 ? 1 : -1;
    SheetB<Scalar> s;
    s.index = c.index;
    s.radial1 = sheet_radial_factor(n, n - 1, sign, phi);
    s.radial2 = Scalar(sign) * sheet_radial_factor(n - 1, n - 2, sign, phi);
    s.b1 = c.cosphere_measure * sheet_radial_factor(n - 1, n - 1, sign, phi);
    s.b0 = c.c1 * s.radial1 + c.c2 * s.radial2;
    b1.push_back(s.b1);
    b0.push_back(s.b0);
    out.sheets.push_back(s);
  }
  const Scalar norm = detail::two_pi_pow<Scalar>(n);
  out.b1 = pairwise_sum(b1) / norm;
  out.b0 = pairwise_sum(b0) / norm;
  return out;
}

template <typename Scalar>
[[nodiscard]] BResult<Scalar> b_coefficients(const ModelSymbols<Scalar>& symbols, const RVector<Scalar>& x,
                                             Scalar phi, const CosphereQuadrature<Scalar>& quad,
                                             const ResolventOptions<Scalar>& options = {}) {
  detail::require_open_angle(phi);
  return b_coefficients(sheet_constants(symbols, x, quad, options), quad.dim(), phi);
}

enum class RecoveryMethod { kTwoAngle, kLimit };

/// Second coefficient from b0 sampled at several angles.
///
/// b0 is affine in phi and its value at phi = 0 is -2 pi a_{n-2}^+.
/// Two-angle uses exactly two samples. Limit fits a line through all
/// samples by least squares and extrapolates it to phi = 0.
template <typename Scalar>
[[nodiscard]] Scalar recover_second_weyl(const std::map<Scalar, Scalar>& b0_values, RecoveryMethod method) {
  const Scalar two_pi = boost::math::constants::two_pi<Scalar>();
  for (const auto& [phi, b0] : b0_values) detail::require_open_angle(phi);
  if (b0_values.size() < 2) throw DegenerateAngles("recover_second_weyl: need at least two angles");
  if (method == RecoveryMethod::kTwoAngle) {
    if (b0_values.size() != 2) throw InvalidArgument("recover_second_weyl: two-angle method takes exactly two angles");
    const auto first = b0_values.begin();
    const auto second = std::next(first);
    const Scalar p1 = first->first, p2 = second->first;
    if (std::abs(p2 - p1) < Scalar(1e-6)) throw DegenerateAngles("recover_second_weyl: angles coincide");
    return (p1 * second->second - p2 * first->second) / (two_pi * (p2 - p1));
  }
  Eigen::Matrix<Scalar, Eigen::Dynamic, 2> design(static_cast<Eigen::Index>(b0_values.size()), 2);
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> rhs(static_cast<Eigen::Index>(b0_values.size()));
  Eigen::Index row = 0;
  for (const auto& [phi, b0] : b0_values) {
    design(row, 0) = Scalar(1);
    design(row, 1) = phi;
    rhs(row) = b0;
    ++row;
  }
  if (std::abs(b0_values.rbegin()->first - b0_values.begin()->first) < Scalar(1e-6)) {
    throw DegenerateAngles("recover_second_weyl: angles coincide");
  }
  const Eigen::Matrix<Scalar, 2, 1> coef = design.colPivHouseholderQr().solve(rhs);
  return -coef(0) / two_pi;
}

}  // namespace weylcoef

#endif  // WEYLCOEF_RESOLVENT_HPP
