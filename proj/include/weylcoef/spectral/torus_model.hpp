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

#ifndef WEYLCOEF_SPECTRAL_TORUS_MODEL_HPP
#define WEYLCOEF_SPECTRAL_TORUS_MODEL_HPP

#include <array>
#include <map>
#include <string>
#include <vector>

#include "weylcoef/symbol.hpp"

namespace weylcoef::spectral {

using Mode = std::array<int, 2>;
using Point2 = Eigen::Vector2d;

/// Hermitian matrix field sum_k C_k e^{i k.x} on the 2-torus.
class TrigPolyMatrix {
 public:
  explicit TrigPolyMatrix(Eigen::Index m) : m_(m) {}

  /// Adds C e^{i k.x} + C* e^{-i k.x}, or just C when k = 0.
  void add_real_pair(const Mode& k, const Eigen::MatrixXcd& c);
  /// Adds c_k e^{i k.x} without pairing. Callers keep the field Hermitian.
  void add_term(const Mode& k, const Eigen::MatrixXcd& c);

  [[nodiscard]] Eigen::Index size() const { return m_; }
  [[nodiscard]] const std::map<Mode, Eigen::MatrixXcd>& terms() const { return terms_; }
  [[nodiscard]] const Eigen::MatrixXcd* coefficient(const Mode& k) const;

  [[nodiscard]] Eigen::MatrixXcd value(const Point2& x) const;
  [[nodiscard]] Eigen::MatrixXcd derivative(const Point2& x, int axis) const;
  /// max |C_{-k} - C_k^*| over the support.
  [[nodiscard]] double hermitian_defect() const;

 private:
  Eigen::Index m_;
  std::map<Mode, Eigen::MatrixXcd> terms_;
};

/// First-order system (1/2) sum_a [A^a (-i d_a) + (-i d_a) A^a] + B on the
/// 2-torus. Its principal symbol is sum_a A^a(x) xi_a and its
/// subprincipal symbol is B(x).
struct TorusModel {
  std::string name;
  std::map<std::string, double> parameters;
  std::vector<TrigPolyMatrix> a;  // one per axis
  TrigPolyMatrix b{2};

  [[nodiscard]] Eigen::Index size() const { return b.size(); }
  [[nodiscard]] int dim() const { return static_cast<int>(a.size()); }
  [[nodiscard]] ModelSymbols<double> symbols() const;
  /// All Fourier modes present in any coefficient field.
  [[nodiscard]] std::vector<Mode> support() const;
};

struct ParameterSpec {
  std::string name;
  double default_value;
  double min_value;
  double max_value;
};

struct CatalogEntry {
  std::string name;
  std::string description;
  std::vector<ParameterSpec> parameters;
  bool constant_coefficients;
};

[[nodiscard]] const std::vector<CatalogEntry>& catalog();

/// Builds a catalog model. Missing parameters take their defaults.
/// Throws UnknownModel, ParameterOutOfRange or EllipticityViolation.
[[nodiscard]] TorusModel build_model(const std::string& name, const std::map<std::string, double>& params = {});

/// Samples the principal symbol on an x1 by angle grid, x2 = 0, and throws
/// EllipticityViolation if any eigenvalue is near zero or any pair of
/// eigenvalues is near-degenerate.
void check_registration(const TorusModel& model, int n_x = 64, int n_theta = 256);

/// Pauli matrices, indexed 1..3.
[[nodiscard]] Eigen::Matrix2cd pauli(int k);

}  // namespace weylcoef::spectral

#endif  // WEYLCOEF_SPECTRAL_TORUS_MODEL_HPP
