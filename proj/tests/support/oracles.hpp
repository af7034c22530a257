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

// Independent reference computations for the tests. None of these call the
// code under test beyond plain data types.

#ifndef WEYLCOEF_TESTS_ORACLES_HPP
#define WEYLCOEF_TESTS_ORACLES_HPP

#include <cmath>
#include <complex>
#include <functional>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "weylcoef/symbol.hpp"

namespace oracle {

using C = std::complex<double>;
using CMat = Eigen::MatrixXcd;
using RVec = Eigen::VectorXd;

// Matrix polynomial sum_t C_t prod_i z_i^{e_ti} in z = (x, xi), with exact
// derivatives. Hermitian when every C_t is.
struct MatrixPolynomial {
  int dim = 2;  // n; variables are x_1..x_n, xi_1..xi_n
  Eigen::Index m = 2;
  std::vector<std::vector<int>> exponents;
  std::vector<CMat> coefficients;

  [[nodiscard]] CMat evaluate(const RVec& z, int diff = -1) const {
    CMat out = CMat::Zero(m, m);
    for (std::size_t t = 0; t < exponents.size(); ++t) {
      double mono = 1.0;
      for (int i = 0; i < 2 * dim; ++i) {
        int e = exponents[t][static_cast<std::size_t>(i)];
        double factor = 1.0;
        if (i == diff) {
          if (e == 0) {
            mono = 0.0;
            break;
          }
          factor = e;
          --e;
        }
        mono *= factor * std::pow(z(i), e);
      }
      out += mono * coefficients[t];
    }
    return out;
  }

  [[nodiscard]] static RVec stack(const weylcoef::PhasePoint<double>& p) {
    RVec z(2 * p.dim());
    z << p.x(), p.xi();
    return z;
  }

  [[nodiscard]] weylcoef::MatrixJet<double> jet(const weylcoef::PhasePoint<double>& p) const {
    const RVec z = stack(p);
    weylcoef::MatrixJet<double> j;
    j.value = evaluate(z);
    for (int a = 0; a < dim; ++a) j.dx.push_back(evaluate(z, a));
    for (int a = 0; a < dim; ++a) j.dxi.push_back(evaluate(z, dim + a));
    return j;
  }

  /// Field with numerical derivatives only, so the code under test differentiates.
  [[nodiscard]] weylcoef::SymbolField<double> field() const {
    auto self = *this;
    return weylcoef::SymbolField<double>(m, 1, [self](const weylcoef::PhasePoint<double>& p) {
      return self.evaluate(stack(p));
    });
  }
};

inline CMat random_hermitian(std::mt19937_64& rng, Eigen::Index m, double scale = 1.0) {
  std::normal_distribution<double> g(0.0, scale);
  CMat a(m, m);
  for (Eigen::Index i = 0; i < m; ++i)
    for (Eigen::Index j = 0; j < m; ++j) a(i, j) = C(g(rng), g(rng));
  return (a + a.adjoint()) * 0.5;
}

/// Random Hermitian quadratic matrix polynomial in (x, xi).
inline MatrixPolynomial random_polynomial(std::mt19937_64& rng, int dim, Eigen::Index m, int max_degree = 2) {
  MatrixPolynomial p;
  p.dim = dim;
  p.m = m;
  std::uniform_int_distribution<int> pick(0, 2 * dim - 1);
  for (int t = 0; t < 6; ++t) {
    std::vector<int> e(static_cast<std::size_t>(2 * dim), 0);
    const int degree = t % (max_degree + 1);
    for (int d = 0; d < degree; ++d) ++e[static_cast<std::size_t>(pick(rng))];
    p.exponents.push_back(e);
    p.coefficients.push_back(random_hermitian(rng, m));
  }
  return p;
}

/// Exact brackets from exact jets.
inline CMat bracket(const weylcoef::MatrixJet<double>& f, const CMat& g, const weylcoef::MatrixJet<double>& h) {
  CMat out = CMat::Zero(f.value.rows(), h.value.cols());
  for (std::size_t a = 0; a < f.dx.size(); ++a) out += f.dx[a] * g * h.dxi[a] - f.dxi[a] * g * h.dx[a];
  return out;
}

/// First-order perturbation theory for a Hermitian family with simple
/// spectrum: dh_j = v_j* dA v_j and
/// dP_j = sum_{k != j} (P_k dA P_j + P_j dA P_k) / (h_j - h_k).
struct PerturbationJet {
  Eigen::VectorXd h;
  std::vector<CMat> projections;
  std::vector<std::vector<double>> dh;   // [sheet][derivative]
  std::vector<std::vector<CMat>> dP;     // [sheet][derivative]
};

inline PerturbationJet perturbation_jet(const weylcoef::MatrixJet<double>& a) {
  Eigen::SelfAdjointEigenSolver<CMat> solver(a.value);
  PerturbationJet out;
  out.h = solver.eigenvalues();
  const Eigen::Index m = out.h.size();
  for (Eigen::Index k = 0; k < m; ++k) {
    const Eigen::VectorXcd v = solver.eigenvectors().col(k);
    out.projections.push_back(v * v.adjoint());
  }
  std::vector<CMat> derivs = a.dx;
  derivs.insert(derivs.end(), a.dxi.begin(), a.dxi.end());
  out.dh.assign(static_cast<std::size_t>(m), {});
  out.dP.assign(static_cast<std::size_t>(m), {});
  for (Eigen::Index j = 0; j < m; ++j) {
    const auto& pj = out.projections[static_cast<std::size_t>(j)];
    for (const auto& d : derivs) {
      out.dh[static_cast<std::size_t>(j)].push_back((pj * d).trace().real());
      CMat dp = CMat::Zero(m, m);
      for (Eigen::Index k = 0; k < m; ++k) {
        if (k == j) continue;
        const auto& pk = out.projections[static_cast<std::size_t>(k)];
        dp += (pk * d * pj + pj * d * pk) / (out.h(j) - out.h(k));
      }
      out.dP[static_cast<std::size_t>(j)].push_back(dp);
    }
  }
  return out;
}

/// k-th derivative of an analytic function by the Cauchy integral on a
/// circle of radius r with `nodes` trapezoid points.
inline C cauchy_derivative(const std::function<C(C)>& f, C z0, int k, double r, int nodes = 64) {
  C acc(0.0);
  for (int i = 0; i < nodes; ++i) {
    const double t = 2.0 * M_PI * i / nodes;
    const C w = r * std::polar(1.0, t);
    acc += f(z0 + w) / std::pow(w, k);
  }
  return std::tgamma(k + 1.0) * acc / static_cast<double>(nodes);
}

/// Number of k in Z^2 with 0 < |k| + shift <= lambda.
inline long lattice_count(double lambda, double shift) {
  long count = 0;
  const int r = static_cast<int>(std::ceil(lambda - shift)) + 1;
  for (int a = -r; a <= r; ++a) {
    for (int b = -r; b <= r; ++b) {
      const double e = std::hypot(a, b) + shift;
      if (e > 0.0 && e <= lambda) ++count;
    }
  }
  return count;
}

/// Gauss-Legendre nodes on [0, 1] by Newton iteration on the Legendre
/// recurrence. Kept separate from the library quadrature.
inline std::pair<std::vector<double>, std::vector<double>> gauss_legendre_unit(int order) {
  std::vector<double> x(static_cast<std::size_t>(order)), w(static_cast<std::size_t>(order));
  for (int i = 0; i < order; ++i) {
    double t = std::cos(M_PI * (i + 0.75) / (order + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = t;
      for (int k = 2; k <= order; ++k) {
        const double p2 = ((2.0 * k - 1.0) * t * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = order * (t * p1 - p0) / (t * t - 1.0);
      const double step = p1 / dp;
      t -= step;
      if (std::abs(step) < 1e-16) break;
    }
    x[static_cast<std::size_t>(i)] = 0.5 * (1.0 - t);
    w[static_cast<std::size_t>(i)] = 1.0 / ((1.0 - t * t) * dp * dp);
  }
  return {x, w};
}

}  // namespace oracle

#endif  // WEYLCOEF_TESTS_ORACLES_HPP
