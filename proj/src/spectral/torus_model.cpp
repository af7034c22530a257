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

#include "weylcoef/spectral/torus_model.hpp"

#include <cmath>
#include <set>

#include <boost/math/constants/constants.hpp>

#include "weylcoef/eigen_jet.hpp"

namespace weylcoef::spectral {

namespace {

constexpr double kTwoPi = boost::math::constants::two_pi<double>();

Mode negate(const Mode& k) { return {-k[0], -k[1]}; }

std::complex<double> phase(const Mode& k, const Point2& x) {
  return std::polar(1.0, k[0] * x(0) + k[1] * x(1));
}

TorusModel dirac_base(const std::string& name) {
  TorusModel model;
  model.name = name;
  for (int axis = 1; axis <= 2; ++axis) {
    TrigPolyMatrix a(2);
    a.add_real_pair({0, 0}, pauli(axis));
    model.a.push_back(std::move(a));
  }
  return model;
}

// sin(x1) M as a Fourier pair: (M / 2i) e^{i x1} + conjugate.
void add_sin_x1(TrigPolyMatrix& field, const Eigen::Matrix2cd& m) {
  field.add_real_pair({1, 0}, m / std::complex<double>(0.0, 2.0));
}

}  // namespace

Eigen::Matrix2cd pauli(int k) {
  using C = std::complex<double>;
  Eigen::Matrix2cd s;
  switch (k) {
    case 1:
      s << C(0), C(1), C(1), C(0);
      break;
    case 2:
      s << C(0), C(0, -1), C(0, 1), C(0);
      break;
    case 3:
      s << C(1), C(0), C(0), C(-1);
      break;
    default:
      throw InvalidArgument("pauli: index must be 1, 2 or 3");
  }
  return s;
}

void TrigPolyMatrix::add_term(const Mode& k, const Eigen::MatrixXcd& c) {
  if (c.rows() != m_ || c.cols() != m_) throw DimensionMismatch("TrigPolyMatrix: coefficient has the wrong size");
  auto [it, inserted] = terms_.try_emplace(k, c);
  if (!inserted) it->second += c;
}

void TrigPolyMatrix::add_real_pair(const Mode& k, const Eigen::MatrixXcd& c) {
  if (k == Mode{0, 0}) {
    add_term(k, c);
    return;
  }
  add_term(k, c);
  add_term(negate(k), c.adjoint());
}

const Eigen::MatrixXcd* TrigPolyMatrix::coefficient(const Mode& k) const {
  const auto it = terms_.find(k);
  return it == terms_.end() ? nullptr : &it->second;
}

Eigen::MatrixXcd TrigPolyMatrix::value(const Point2& x) const {
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(m_, m_);
  for (const auto& [k, c] : terms_) out += c * phase(k, x);
  return out;
}

Eigen::MatrixXcd TrigPolyMatrix::derivative(const Point2& x, int axis) const {
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(m_, m_);
  for (const auto& [k, c] : terms_) {
    out += c * (std::complex<double>(0.0, k[static_cast<std::size_t>(axis)]) * phase(k, x));
  }
  return out;
}

double TrigPolyMatrix::hermitian_defect() const {
  double worst = 0.0;
  for (const auto& [k, c] : terms_) {
    const Eigen::MatrixXcd* partner = coefficient(negate(k));
    const double d = partner ? (*partner - c.adjoint()).cwiseAbs().maxCoeff() : c.cwiseAbs().maxCoeff();
    worst = std::max(worst, d);
  }
  return worst;
}

std::vector<Mode> TorusModel::support() const {
  std::set<Mode> modes;
  for (const auto& field : a) {
    for (const auto& [k, c] : field.terms()) modes.insert(k);
  }
  for (const auto& [k, c] : b.terms()) modes.insert(k);
  return {modes.begin(), modes.end()};
}

ModelSymbols<double> TorusModel::symbols() const {
  const auto fields = a;
  const auto sub = b;
  const Eigen::Index m = size();
  auto point_x = [](const PhasePoint<double>& p) { return Point2(p.x()(0), p.x()(1)); };

  SymbolField<double>::Evaluator principal = [fields, m, point_x](const PhasePoint<double>& p) {
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(m, m);
    const Point2 x = point_x(p);
    for (std::size_t al = 0; al < fields.size(); ++al) out += fields[al].value(x) * p.xi()(static_cast<Eigen::Index>(al));
    return out;
  };
  SymbolField<double>::JetEvaluator principal_jet = [fields, m, point_x](const PhasePoint<double>& p) {
    MatrixJet<double> jet;
    const Point2 x = point_x(p);
    jet.value = Eigen::MatrixXcd::Zero(m, m);
    for (std::size_t al = 0; al < fields.size(); ++al) {
      const Eigen::MatrixXcd v = fields[al].value(x);
      jet.value += v * p.xi()(static_cast<Eigen::Index>(al));
      jet.dxi.push_back(v);
    }
    for (int beta = 0; beta < 2; ++beta) {
      Eigen::MatrixXcd d = Eigen::MatrixXcd::Zero(m, m);
      for (std::size_t al = 0; al < fields.size(); ++al) {
        d += fields[al].derivative(x, beta) * p.xi()(static_cast<Eigen::Index>(al));
      }
      jet.dx.push_back(std::move(d));
    }
    return jet;
  };
  SymbolField<double>::Evaluator subprincipal = [sub, point_x](const PhasePoint<double>& p) {
    return sub.value(point_x(p));
  };
  SymbolField<double>::JetEvaluator subprincipal_jet = [sub, m, point_x](const PhasePoint<double>& p) {
    MatrixJet<double> jet;
    const Point2 x = point_x(p);
    jet.value = sub.value(x);
    for (int beta = 0; beta < 2; ++beta) {
      jet.dx.push_back(sub.derivative(x, beta));
      jet.dxi.push_back(Eigen::MatrixXcd::Zero(m, m));
    }
    return jet;
  };
  return {SymbolField<double>(m, 1, principal, principal_jet), SymbolField<double>(m, 0, subprincipal, subprincipal_jet)};
}

const std::vector<CatalogEntry>& catalog() {
  static const std::vector<CatalogEntry> entries{
      {"dirac", "massless Dirac operator, A^a = sigma_a, B = 0", {}, true},
      {"shifted-dirac", "Dirac plus a scalar shift, B = beta I", {{"beta", 0.3, -10.0, 10.0}}, true},
      {"mass-dirac", "Dirac plus a mass term, B = b sigma_3", {{"b", 0.5, -10.0, 10.0}}, true},
      {"twisted",
       "A^a = sigma_a + eps sin(x1) R_a with R_1 = sigma_2, R_2 = -sigma_1, B = 0",
       {{"eps", 0.1, 0.0, 0.2}},
       false},
      {"skewed", "A^1 = sigma_1, A^2 = sigma_2 + eps sin(x1) sigma_3, B = 0", {{"eps", 0.2, 0.0, 0.5}}, false},
  };
  return entries;
}

TorusModel build_model(const std::string& name, const std::map<std::string, double>& params) {
  const CatalogEntry* entry = nullptr;
  for (const auto& e : catalog()) {
    if (e.name == name) entry = &e;
  }
  if (entry == nullptr) throw UnknownModel("no catalog model named '" + name + "'");

  std::map<std::string, double> values;
  for (const auto& spec : entry->parameters) values[spec.name] = spec.default_value;
  for (const auto& [key, value] : params) {
    const auto it = std::find_if(entry->parameters.begin(), entry->parameters.end(),
                                 [&key](const ParameterSpec& s) { return s.name == key; });
    if (it == entry->parameters.end()) {
      throw ParameterOutOfRange("model '" + name + "' has no parameter '" + key + "'");
    }
    if (!(value >= it->min_value && value <= it->max_value)) {
      throw ParameterOutOfRange("parameter '" + key + "' of model '" + name + "' must lie in [" +
                                std::to_string(it->min_value) + ", " + std::to_string(it->max_value) + "]");
    }
    values[key] = value;
  }

  TorusModel model = dirac_base(name);
  model.parameters = values;
  if (name == "shifted-dirac") {
    model.b.add_real_pair({0, 0}, values["beta"] * Eigen::Matrix2cd::Identity());
  } else if (name == "mass-dirac") {
    model.b.add_real_pair({0, 0}, values["b"] * pauli(3));
  } else if (name == "twisted") {
    add_sin_x1(model.a[0], values["eps"] * pauli(2));
    add_sin_x1(model.a[1], -values["eps"] * pauli(1));
  } else if (name == "skewed") {
    add_sin_x1(model.a[1], values["eps"] * pauli(3));
  }
  check_registration(model);
  return model;
}

void check_registration(const TorusModel& model, int n_x, int n_theta) {
  if (model.dim() != 2) throw InvalidArgument("check_registration: only two-dimensional models are supported");
  for (const auto& field : model.a) {
    if (field.hermitian_defect() > 1e-12) throw EllipticityViolation("coefficient field is not Hermitian");
  }
  if (model.b.hermitian_defect() > 1e-12) throw EllipticityViolation("subprincipal field is not Hermitian");
  const SymbolField<double> principal = model.symbols().principal;
  for (int i = 0; i < n_x; ++i) {
    for (int k = 0; k < n_theta; ++k) {
      const double t = kTwoPi * k / n_theta;
      Eigen::VectorXd x(2), xi(2);
      x << kTwoPi * i / n_x, 0.0;
      xi << std::cos(t), std::sin(t);
      try {
        (void)eigen_decompose(principal(PhasePoint<double>(x, xi)));
      } catch (const Error& e) {
        throw EllipticityViolation("model '" + model.name + "' fails registration at x1 = " + std::to_string(x(0)) +
                                   ", angle = " + std::to_string(t) + " (" + e.what() + ")");
      }
    }
  }
}

}  // namespace weylcoef::spectral
