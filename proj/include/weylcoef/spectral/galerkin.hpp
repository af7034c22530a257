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

#ifndef WEYLCOEF_SPECTRAL_GALERKIN_HPP
#define WEYLCOEF_SPECTRAL_GALERKIN_HPP

#include <cstddef>
#include <vector>

#include "weylcoef/spectral/torus_model.hpp"

namespace weylcoef::spectral {

struct SolveOptions {
  std::size_t budget = 16384;     // largest allowed total dimension m (2K+1)^2
  double trusted_fraction = 0.6;  // |lambda| <= trusted_fraction * K is trusted
  double hermitian_tol = 1e-10;
};

/// Eigenpairs of the Fourier-Galerkin truncation to modes |k|_inf <= K.
///
/// The operator couples modes only through the coefficient support, so the
/// matrix splits into independent blocks. Each block is solved densely.
struct SpectrumResult {
  struct Block {
    std::vector<Mode> modes;
    Eigen::VectorXd values;
    Eigen::MatrixXcd vectors;  // rows: mode-major, component-minor
  };

  int K = 0;
  Eigen::Index m = 0;  // components per mode
  double trusted_bound = 0.0;
  Eigen::VectorXd eigenvalues;  // ascending
  std::vector<Block> blocks;
  std::vector<std::pair<std::size_t, Eigen::Index>> location;  // (block, column) per eigenvalue

  [[nodiscard]] std::size_t dimension() const { return static_cast<std::size_t>(eigenvalues.size()); }
  [[nodiscard]] bool trusted(Eigen::Index k) const { return std::abs(eigenvalues(k)) <= trusted_bound; }
  /// Coefficients of eigenvector k with the modes they belong to.
  [[nodiscard]] const Block& block_of(Eigen::Index k) const { return blocks[location[static_cast<std::size_t>(k)].first]; }
  [[nodiscard]] Eigen::VectorXcd coefficients(Eigen::Index k) const;
};

[[nodiscard]] SpectrumResult assemble_and_solve(const TorusModel& model, int K, const SolveOptions& options = {});

/// Local weights w_k(x) = |v_k(x)|^2 for every eigenpair, in eigenvalue order.
/// Basis functions are e^{i q.x} / (2 pi).
[[nodiscard]] Eigen::VectorXd local_weights(const SpectrumResult& spectrum, const Point2& x);

}  // namespace weylcoef::spectral

#endif  // WEYLCOEF_SPECTRAL_GALERKIN_HPP
