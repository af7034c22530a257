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

#ifndef WEYLCOEF_EIGEN_JET_HPP
#define WEYLCOEF_EIGEN_JET_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "weylcoef/symbol.hpp"

namespace weylcoef {

/// One eigenvalue branch: signed index j, eigenvalue, projection, unit eigenvector.
template <typename Scalar>
struct Sheet {
  int index;
  Scalar h;
  CMatrix<Scalar> projection;
  CVector<Scalar> eigenvector;
};

template <typename Scalar>
struct EigenDecomposition {
  std::vector<Sheet<Scalar>> sheets;  // ascending eigenvalues
  int m_minus = 0;
  int m_plus = 0;
  Scalar gap = Scalar(0);  // smallest distance between adjacent eigenvalues
  Scalar tolerance = Scalar(0);

  /// Position of sheet j in `sheets`: j = -m_minus..-1 first, then 1..m_plus.
  [[nodiscard]] std::size_t position(int j) const {
    if (j < 0 && -j <= m_minus) return static_cast<std::size_t>(m_minus + j);
    if (j > 0 && j <= m_plus) return static_cast<std::size_t>(m_minus + j - 1);
    throw InvalidArgument("sheet index " + std::to_string(j) + " does not exist");
  }
  [[nodiscard]] const Sheet<Scalar>& sheet(int j) const { return sheets[position(j)]; }
};

/// Scales v so that its largest-magnitude component is real and positive.
template <typename Scalar>
void apply_phase_convention(CVector<Scalar>& v) {
  Eigen::Index imax = 0;
  v.cwiseAbs().maxCoeff(&imax);
  const Complex<Scalar> c = v(imax);
  if (std::abs(c) > Scalar(0)) v *= std::conj(c) / std::abs(c);
}

/// Sorted eigen-decomposition of a Hermitian matrix with signed sheet indices.
///
/// With no tolerance given, eigenvalues closer than 1e-6 times the spectral
/// radius count as degenerate, and smaller ones count as zero.
template <typename Scalar>
[[nodiscard]] EigenDecomposition<Scalar> eigen_decompose(const CMatrix<Scalar>& matrix,
                                                         std::optional<Scalar> simplicity_tol = std::nullopt) {
  using std::abs;
  if (matrix.rows() != matrix.cols() || matrix.rows() == 0) {
    throw DimensionMismatch("eigen_decompose: matrix must be square and nonempty");
  }
  const Scalar scale = std::max(Scalar(1), matrix.cwiseAbs().maxCoeff());
  if (hermitian_defect(matrix) > Scalar(1e-10) * scale) {
    throw NotHermitian("eigen_decompose: matrix is not Hermitian");
  }
  Eigen::SelfAdjointEigenSolver<CMatrix<Scalar>> solver(matrix);
  if (solver.info() != Eigen::Success) throw SolveFailure("eigen_decompose: eigensolver failed");

  const auto& values = solver.eigenvalues();
  const Eigen::Index m = values.size();
  EigenDecomposition<Scalar> out;
  const Scalar radius = values.cwiseAbs().maxCoeff();
  out.tolerance = simplicity_tol.value_or(Scalar(1e-6) * radius);
  out.gap = std::numeric_limits<Scalar>::infinity();
  for (Eigen::Index k = 0; k < m; ++k) {
    if (abs(values(k)) < out.tolerance || values(k) == Scalar(0)) {
      throw NotElliptic("eigen_decompose: eigenvalue " + format_number(static_cast<double>(values(k))) +
                        " is below the ellipticity threshold");
    }
    if (k > 0) out.gap = std::min(out.gap, values(k) - values(k - 1));
  }
  if (m > 1 && out.gap < out.tolerance) {
    throw DegenerateSpectrum("eigen_decompose: eigenvalue gap " + format_number(static_cast<double>(out.gap)) +
                             " is below the simplicity threshold");
  }
  out.m_minus = static_cast<int>((values.array() < Scalar(0)).count());
  out.m_plus = static_cast<int>(m) - out.m_minus;
  for (Eigen::Index k = 0; k < m; ++k) {
    CVector<Scalar> v = solver.eigenvectors().col(k);
    apply_phase_convention(v);
    const int j = k < out.m_minus ? static_cast<int>(k) - out.m_minus : static_cast<int>(k) - out.m_minus + 1;
    CMatrix<Scalar> projection = v * v.adjoint();
    out.sheets.push_back({j, values(k), std::move(projection), std::move(v)});
  }
  return out;
}

/// Eigen-data of one sheet together with its first phase-space derivatives.
template <typename Scalar>
struct SheetJet {
  int index = 0;
  Scalar h = Scalar(0);
  RVector<Scalar> dh_x, dh_xi;
  MatrixJet<Scalar> projection;   // P and its derivatives
  MatrixJet<Scalar> eigenvector;  // v (m x 1) and its derivatives
};

template <typename Scalar>
struct EigenJet {
  std::vector<SheetJet<Scalar>> sheets;
  int m_minus = 0;
  int m_plus = 0;
  Scalar gap = Scalar(0);

  [[nodiscard]] const SheetJet<Scalar>& sheet(int j) const {
    if (j < 0 && -j <= m_minus) return sheets[static_cast<std::size_t>(m_minus + j)];
    if (j > 0 && j <= m_plus) return sheets[static_cast<std::size_t>(m_minus + j - 1)];
    throw InvalidArgument("sheet index " + std::to_string(j) + " does not exist");
  }
};

template <typename Scalar>
struct EigenJetOptions {
  Scalar step = Scalar(1e-3);
  std::optional<Scalar> simplicity_tol;
  /// Optional extra phase angle applied to every eigenvector, as a function
  /// of the point. Only used to check gauge invariance.
  std::function<Scalar(const PhasePoint<Scalar>&, int)> gauge;
};

/// Eigenvalues, projections and eigenvectors with five-point derivatives.
///
/// P is gauge free and needs no phase fixing. Perturbed eigenvectors are
/// rotated so that <v_base, v_pert> is real and positive.
template <typename Scalar>
[[nodiscard]] EigenJet<Scalar> eigen_jet(const SymbolField<Scalar>& field, const PhasePoint<Scalar>& p,
                                         const EigenJetOptions<Scalar>& options = {}) {
  if (!(options.step > Scalar(0))) throw InvalidArgument("eigen_jet: step must be positive");
  const Eigen::Index n = p.dim();
  const EigenDecomposition<Scalar> base = eigen_decompose(field(p), options.simplicity_tol);
  const std::size_t m = base.sheets.size();

  auto gauge_phase = [&](const PhasePoint<Scalar>& q, int j) -> Complex<Scalar> {
    if (!options.gauge) return Complex<Scalar>(1);
    return std::polar(Scalar(1), options.gauge(q, j));
  };

  EigenJet<Scalar> out;
  out.m_minus = base.m_minus;
  out.m_plus = base.m_plus;
  out.gap = base.gap;
  for (const auto& s : base.sheets) {
    SheetJet<Scalar> sj;
    sj.index = s.index;
    sj.h = s.h;
    sj.dh_x = RVector<Scalar>::Zero(n);
    sj.dh_xi = RVector<Scalar>::Zero(n);
    sj.projection.value = s.projection;
    sj.eigenvector.value = s.eigenvector * gauge_phase(p, s.index);
    out.sheets.push_back(std::move(sj));
  }

  constexpr std::array<int, 4> kOffsets{-2, -1, 1, 2};
  constexpr std::array<int, 4> kWeights{1, -8, 8, -1};
  for (bool is_xi : {false, true}) {
    const Scalar h = is_xi ? xi_step(p, options.step) : options.step;
    for (Eigen::Index a = 0; a < n; ++a) {
      std::vector<Scalar> dh(m, Scalar(0));
      std::vector<CMatrix<Scalar>> dP(m);
      std::vector<CMatrix<Scalar>> dv(m);
      for (std::size_t k = 0; k < m; ++k) {
        dP[k] = CMatrix<Scalar>::Zero(base.sheets[k].projection.rows(), base.sheets[k].projection.cols());
        dv[k] = CMatrix<Scalar>::Zero(base.sheets[k].eigenvector.size(), 1);
      }
      for (std::size_t s = 0; s < kOffsets.size(); ++s) {
        const PhasePoint<Scalar> q = shifted(p, is_xi, a, Scalar(kOffsets[s]) * h);
        const EigenDecomposition<Scalar> pert = eigen_decompose(field(q), options.simplicity_tol);
        if (pert.m_plus != base.m_plus) {
          throw DegenerateSpectrum("eigen_jet: sheet count changes inside the difference stencil");
        }
        const Scalar w = Scalar(kWeights[s]);
        for (std::size_t k = 0; k < m; ++k) {
          const auto& bs = base.sheets[k];
          const auto& ps = pert.sheets[k];
          const Complex<Scalar> overlap = bs.eigenvector.dot(ps.eigenvector);
          if (std::abs(overlap) < Scalar(0.5)) {
            throw GaugeAlignmentFailure("eigen_jet: eigenvector rotates too far within one step");
          }
          CVector<Scalar> v = ps.eigenvector * (std::conj(overlap) / std::abs(overlap));
          v *= gauge_phase(q, bs.index);
          dh[k] += w * ps.h;
          dP[k] += w * ps.projection;
          dv[k] += w * v;
        }
      }
      for (std::size_t k = 0; k < m; ++k) {
        auto& sj = out.sheets[k];
        const Scalar denom = Scalar(12) * h;
        (is_xi ? sj.dh_xi : sj.dh_x)(a) = dh[k] / denom;
        CMatrix<Scalar> d = dP[k] / denom;
        d = (d + d.adjoint()).eval() * Scalar(0.5);
        (is_xi ? sj.projection.dxi : sj.projection.dx).push_back(std::move(d));
        (is_xi ? sj.eigenvector.dxi : sj.eigenvector.dx).push_back(dv[k] / denom);
      }
    }
  }
  return out;
}

/// tr{P, P, P} for one sheet: the gauge-free curvature scalar.
template <typename Scalar>
[[nodiscard]] Complex<Scalar> projection_curvature(const SheetJet<Scalar>& s) {
  return generalized_bracket(s.projection, s.projection.value, s.projection).trace();
}

/// {v*, v}: the eigenvector form of the curvature scalar.
template <typename Scalar>
[[nodiscard]] Complex<Scalar> eigenvector_curvature(const SheetJet<Scalar>& s) {
  return poisson_bracket(adjoint(s.eigenvector), s.eigenvector)(0, 0);
}

}  // namespace weylcoef

#endif  // WEYLCOEF_EIGEN_JET_HPP
