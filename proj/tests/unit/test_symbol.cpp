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

#include <random>

#include "doctest.h"
#include "support/oracles.hpp"
#include "weylcoef/eigen_jet.hpp"
#include "weylcoef/symbol.hpp"

using namespace weylcoef;
using oracle::C;
using oracle::CMat;

namespace {

PhasePoint<double> point(double x1, double x2, double k1, double k2) {
  RVector<double> x(2), xi(2);
  x << x1, x2;
  xi << k1, k2;
  return {x, xi};
}

Eigen::Matrix2cd sigma(int k) {
  Eigen::Matrix2cd s;
  if (k == 1) s << 0, 1, 1, 0;
  if (k == 2) s << 0, C(0, -1), C(0, 1), 0;
  if (k == 3) s << 1, 0, 0, -1;
  return s;
}

SymbolField<double> dirac_field() {
  return {2, 1, [](const PhasePoint<double>& p) -> CMat { return p.xi()(0) * sigma(1) + p.xi()(1) * sigma(2); }};
}

}  // namespace

TEST_CASE("phase point rejects bad input") {
  RVector<double> x(2), xi(2), xi3(3);
  x << 0, 0;
  xi << 0, 0;
  xi3 << 1, 0, 0;
  CHECK_THROWS_AS(PhasePoint<double>(x, xi), InvalidArgument);
  CHECK_THROWS_AS(PhasePoint<double>(x, xi3), DimensionMismatch);
}

TEST_CASE("diagonal matrix decomposes into unit projections") {
  CMat d = CMat::Zero(2, 2);
  d(0, 0) = -1;
  d(1, 1) = 1;
  const auto dec = eigen_decompose(d);
  CHECK(dec.m_minus == 1);
  CHECK(dec.m_plus == 1);
  CHECK(dec.sheet(-1).h == doctest::Approx(-1.0));
  CHECK(dec.sheet(1).h == doctest::Approx(1.0));
  CMat e0 = CMat::Zero(2, 2), e1 = CMat::Zero(2, 2);
  e0(0, 0) = 1;
  e1(1, 1) = 1;
  CHECK((dec.sheet(-1).projection - e0).norm() < 1e-14);
  CHECK((dec.sheet(1).projection - e1).norm() < 1e-14);
}

TEST_CASE("Dirac symbol at xi = (1, 0) has eigenvector (1, 1)/sqrt 2") {
  const auto dec = eigen_decompose<double>(sigma(1));
  // characteristic polynomial t^2 - 1: roots -1, 1
  CHECK(dec.sheet(1).h == doctest::Approx(1.0));
  CHECK(dec.sheet(-1).h == doctest::Approx(-1.0));
  Eigen::Vector2cd expected(1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0));
  CHECK(std::abs(std::abs(expected.dot(dec.sheet(1).eigenvector)) - 1.0) < 1e-14);
}

TEST_CASE("near-degenerate and singular matrices are rejected") {
  CMat m = CMat::Zero(3, 3);
  m(0, 0) = 1.0;
  m(1, 1) = 1.0 + 1e-9;
  m(2, 2) = -2.0;
  CHECK_THROWS_AS(eigen_decompose(m), DegenerateSpectrum);
  CMat z = CMat::Zero(2, 2);
  z(0, 0) = 1.0;
  CHECK_THROWS_AS(eigen_decompose(z), NotElliptic);
  CMat nh = CMat::Zero(2, 2);
  nh(0, 0) = 1.0;
  nh(1, 1) = -1.0;
  nh(0, 1) = 0.5;
  CHECK_THROWS_AS(eigen_decompose(nh), NotHermitian);
}

TEST_CASE("eigen reconstruction and homogeneity") {
  std::mt19937_64 rng(11);
  const auto poly = oracle::random_polynomial(rng, 2, 3);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const auto field = poly.field();
  for (int trial = 0; trial < 20; ++trial) {
    const auto p = point(u(rng), u(rng), u(rng), u(rng));
    const CMat a = field(p);
    const auto dec = eigen_decompose<double>(a, 1e-12);
    CMat rebuilt = CMat::Zero(3, 3);
    for (const auto& s : dec.sheets) rebuilt += s.h * s.projection;
    CHECK((rebuilt - a).cwiseAbs().maxCoeff() < 1e-10);
  }
  const auto dirac = dirac_field();
  const auto p = point(0.3, 0.1, 0.6, -0.8);
  const auto q = point(0.3, 0.1, 1.8, -2.4);
  const auto a = eigen_jet(dirac, p), b = eigen_jet(dirac, q);
  for (int j : {-1, 1}) {
    CHECK(b.sheet(j).h == doctest::Approx(3.0 * a.sheet(j).h).epsilon(1e-13));
    CHECK((b.sheet(j).projection.value - a.sheet(j).projection.value).norm() < 1e-13);
  }
}

TEST_CASE("finite-difference jets") {
  SUBCASE("constant field has zero derivatives") {
    const SymbolField<double> f(2, 0, [](const PhasePoint<double>&) -> CMat { return sigma(3); });
    const auto jet = symbol_jet(f, point(0.2, 0.4, 1.0, 2.0));
    for (const auto& d : jet.dx) CHECK(d.norm() < 1e-12);
    for (const auto& d : jet.dxi) CHECK(d.norm() < 1e-12);
  }
  SUBCASE("|xi| has the unit gradient") {
    const SymbolField<double> f(1, 1, [](const PhasePoint<double>& p) -> CMat {
      return CMat::Constant(1, 1, C(p.xi().norm()));
    });
    const auto jet = symbol_jet(f, point(0.0, 0.0, 0.0, 1.0));
    CHECK(std::abs(jet.dxi[0](0, 0)) < 1e-12);
    CHECK(std::abs(jet.dxi[1](0, 0) - 1.0) < 1e-12);
  }
  SUBCASE("polynomial field converges to the exact derivative") {
    std::mt19937_64 rng(3);
    oracle::MatrixPolynomial poly;
    poly.dim = 2;
    poly.m = 2;
    // cubic terms so that the five-point rule is not exact
    poly.exponents = {{3, 0, 0, 1}, {0, 2, 1, 0}, {1, 1, 0, 1}, {0, 0, 3, 0}};
    for (int t = 0; t < 4; ++t) poly.coefficients.push_back(oracle::random_hermitian(rng, 2));
    const auto p = point(0.7, -0.4, 0.9, 0.5);
    const auto exact = poly.jet(p);
    for (double step : {1e-2, 1e-3}) {
      const auto fd = symbol_jet(poly.field(), p, step);
      double err = 0.0;
      for (int a = 0; a < 2; ++a) {
        err = std::max(err, (fd.dx[static_cast<std::size_t>(a)] - exact.dx[static_cast<std::size_t>(a)]).norm());
        err = std::max(err, (fd.dxi[static_cast<std::size_t>(a)] - exact.dxi[static_cast<std::size_t>(a)]).norm());
      }
      CHECK(err < 10.0 * step * step);
    }
  }
}

TEST_CASE("Poisson and generalized brackets") {
  const auto p = point(0.5, 0.2, 1.3, -0.7);
  const SymbolField<double> xfield(2, 0, [](const PhasePoint<double>& q) -> CMat {
    return q.x()(0) * CMat::Identity(2, 2);
  });
  const SymbolField<double> xifield(2, 1, [](const PhasePoint<double>& q) -> CMat {
    return q.xi()(0) * CMat::Identity(2, 2);
  });
  const auto fx = symbol_jet(xfield, p), fxi = symbol_jet(xifield, p);
  CHECK((poisson_bracket(fx, fxi) - CMat::Identity(2, 2)).norm() < 1e-10);

  const SymbolField<double> scalar(1, 1, [](const PhasePoint<double>& q) -> CMat {
    return CMat::Constant(1, 1, C(std::sin(q.x()(0)) * q.xi().norm() + q.x()(1) * q.xi()(1)));
  });
  const auto sj = symbol_jet(scalar, p);
  CHECK(std::abs(poisson_bracket(sj, sj)(0, 0)) < 1e-12);

  std::mt19937_64 rng(5);
  double worst = 0.0, worst_g = 0.0, worst_i = 0.0, worst_x = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    const auto a = oracle::random_polynomial(rng, 2, 3), b = oracle::random_polynomial(rng, 2, 3);
    const CMat g = oracle::random_hermitian(rng, 3);
    const auto ea = a.jet(p), eb = b.jet(p);
    const auto na = symbol_jet(a.field(), p), nb = symbol_jet(b.field(), p);
    worst = std::max(worst, (poisson_bracket(na, nb) - oracle::bracket(ea, CMat::Identity(3, 3), eb)).norm());
    worst_g = std::max(worst_g, (generalized_bracket(na, g, nb) - oracle::bracket(ea, g, eb)).norm());
    worst_i = std::max(worst_i, (generalized_bracket(na, CMat(CMat::Identity(3, 3)), nb) - poisson_bracket(na, nb)).norm());
    MatrixJet<double> cx = ea;  // x-independent copies
    for (auto& d : cx.dx) d.setZero();
    MatrixJet<double> cy = eb;
    for (auto& d : cy.dx) d.setZero();
    worst_x = std::max(worst_x, generalized_bracket(cx, g, cy).norm());
  }
  CHECK(worst < 1e-8);
  CHECK(worst_g < 1e-8);
  CHECK(worst_i < 1e-14);
  CHECK(worst_x == 0.0);
}

TEST_CASE("eigen jets") {
  SUBCASE("constant symbol has zero projection derivatives") {
    const SymbolField<double> f(2, 1, [](const PhasePoint<double>&) -> CMat { return sigma(3) + 0.5 * sigma(1); });
    const auto ej = eigen_jet(f, point(0.1, 0.2, 1.0, 0.0));
    for (const auto& s : ej.sheets) {
      for (const auto& d : s.projection.dx) CHECK(d.norm() < 1e-12);
      for (const auto& d : s.projection.dxi) CHECK(d.norm() < 1e-12);
    }
  }
  SUBCASE("x-independent Dirac symbol has zero eigenvector curvature") {
    const auto ej = eigen_jet(dirac_field(), point(0.1, 0.2, 0.6, 0.8));
    for (const auto& s : ej.sheets) CHECK(std::abs(eigenvector_curvature(s)) < 1e-12);
  }
  SUBCASE("derivatives match first-order perturbation theory") {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    double worst_h = 0.0, worst_p = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
      const auto poly = oracle::random_polynomial(rng, 2, 3);
      const auto p = point(u(rng), u(rng), u(rng), u(rng));
      const auto ref = oracle::perturbation_jet(poly.jet(p));
      double gap = 1e9;
      for (int k = 1; k < 3; ++k) gap = std::min(gap, ref.h(k) - ref.h(k - 1));
      if (gap < 0.2 || ref.h.cwiseAbs().minCoeff() < 0.1) continue;
      const auto ej = eigen_jet(poly.field(), p, EigenJetOptions<double>{1e-3, 1e-9, {}});
      for (std::size_t k = 0; k < 3; ++k) {
        const auto& s = ej.sheets[k];
        for (int a = 0; a < 2; ++a) {
          const auto ia = static_cast<std::size_t>(a), ib = static_cast<std::size_t>(a + 2);
          worst_h = std::max(worst_h, std::abs(s.dh_x(a) - ref.dh[k][ia]));
          worst_h = std::max(worst_h, std::abs(s.dh_xi(a) - ref.dh[k][ib]));
          worst_p = std::max(worst_p, (s.projection.dx[ia] - ref.dP[k][ia]).norm());
          worst_p = std::max(worst_p, (s.projection.dxi[ia] - ref.dP[k][ib]).norm());
        }
      }
    }
    CHECK(worst_h < 1e-7);
    CHECK(worst_p < 1e-6);
  }
  SUBCASE("eigenvector derivatives are consistent with the projection derivatives") {
    std::mt19937_64 rng(23);
    const auto poly = oracle::random_polynomial(rng, 2, 2);
    const auto p = point(0.3, 0.6, 1.1, -0.4);
    const auto ej = eigen_jet(poly.field(), p);
    for (const auto& s : ej.sheets) {
      const CMat v = s.eigenvector.value;
      for (std::size_t a = 0; a < 2; ++a) {
        const CMat dv = s.eigenvector.dx[a];
        CHECK((dv * v.adjoint() + v * dv.adjoint() - s.projection.dx[a]).norm() < 1e-7);
      }
    }
  }
}

TEST_CASE("projection identities") {
  std::mt19937_64 rng(29);
  const auto poly = oracle::random_polynomial(rng, 2, 3);
  const auto ej = eigen_jet(poly.field(), point(0.4, -0.2, 0.8, 0.9), EigenJetOptions<double>{1e-3, 1e-9, {}});
  for (const auto& s : ej.sheets) {
    // tr{P, P} vanishes; the matrix itself does not in general
    CHECK(std::abs(poisson_bracket(s.projection, s.projection).trace()) < 1e-8);
    // eigenvector and projection forms of the curvature scalar
    CHECK(std::abs(projection_curvature(s) + eigenvector_curvature(s)) < 1e-6);
  }
}
