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

#include "weylcoef/spectral/galerkin.hpp"

#include <algorithm>
#include <numeric>

#include <boost/math/constants/constants.hpp>

#include "weylcoef/eigen_jet.hpp"

namespace weylcoef::spectral {

namespace {

class ModeBox {
 public:
  explicit ModeBox(int K) : K_(K), side_(2 * K + 1) {}
  [[nodiscard]] std::size_t count() const { return static_cast<std::size_t>(side_) * static_cast<std::size_t>(side_); }
  [[nodiscard]] bool contains(const Mode& k) const { return std::abs(k[0]) <= K_ && std::abs(k[1]) <= K_; }
  [[nodiscard]] std::size_t index(const Mode& k) const {
    return static_cast<std::size_t>((k[0] + K_) * side_ + (k[1] + K_));
  }
  [[nodiscard]] Mode mode(std::size_t i) const {
    return {static_cast<int>(i) / side_ - K_, static_cast<int>(i) % side_ - K_};
  }

 private:
  int K_;
  int side_;
};

struct DisjointSets {
  std::vector<std::size_t> parent;
  explicit DisjointSets(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), std::size_t{0}); }
  std::size_t find(std::size_t i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

}  // namespace

Eigen::VectorXcd SpectrumResult::coefficients(Eigen::Index k) const {
  const auto& [b, col] = location[static_cast<std::size_t>(k)];
  return blocks[b].vectors.col(col);
}

SpectrumResult assemble_and_solve(const TorusModel& model, int K, const SolveOptions& options) {
  if (K < 8) throw InvalidArgument("assemble_and_solve: K must be at least 8");
  if (model.dim() != 2) throw InvalidArgument("assemble_and_solve: only two-dimensional models are supported");
  const Eigen::Index m = model.size();
  const ModeBox box(K);
  const std::size_t total = box.count() * static_cast<std::size_t>(m);
  if (total > options.budget) {
    throw BudgetExceeded("Galerkin dimension " + std::to_string(total) + " exceeds the budget of " +
                         std::to_string(options.budget));
  }

  // Blocks are the connected components of the mode coupling graph.
  const std::vector<Mode> support = model.support();
  DisjointSets sets(box.count());
  for (std::size_t i = 0; i < box.count(); ++i) {
    const Mode p = box.mode(i);
    for (const Mode& d : support) {
      const Mode q{p[0] - d[0], p[1] - d[1]};
      if (box.contains(q)) sets.unite(i, box.index(q));
    }
  }
  std::vector<std::vector<std::size_t>> components;
  std::vector<std::ptrdiff_t> component_of(box.count(), -1);
  for (std::size_t i = 0; i < box.count(); ++i) {
    const std::size_t root = sets.find(i);
    if (component_of[root] < 0) {
      component_of[root] = static_cast<std::ptrdiff_t>(components.size());
      components.emplace_back();
    }
    components[static_cast<std::size_t>(component_of[root])].push_back(i);
  }

  SpectrumResult out;
  out.K = K;
  out.m = m;
  out.trusted_bound = options.trusted_fraction * K;
  std::vector<std::tuple<double, std::size_t, Eigen::Index>> order;

  for (std::size_t c = 0; c < components.size(); ++c) {
    const auto& members = components[c];
    const Eigen::Index dim = static_cast<Eigen::Index>(members.size()) * m;
    std::vector<std::ptrdiff_t> local(box.count(), -1);
    for (std::size_t r = 0; r < members.size(); ++r) local[members[r]] = static_cast<std::ptrdiff_t>(r);

    // <p| H |q> = sum_a Ahat^a_{p-q} (p_a + q_a) / 2 + Bhat_{p-q}
    Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(dim, dim);
    for (std::size_t r = 0; r < members.size(); ++r) {
      const Mode p = box.mode(members[r]);
      for (const Mode& d : support) {
        const Mode q{p[0] - d[0], p[1] - d[1]};
        if (!box.contains(q)) continue;
        const std::ptrdiff_t s = local[box.index(q)];
        Eigen::MatrixXcd block = Eigen::MatrixXcd::Zero(m, m);
        for (int al = 0; al < 2; ++al) {
          if (const auto* coef = model.a[static_cast<std::size_t>(al)].coefficient(d)) {
            block += *coef * (0.5 * (p[static_cast<std::size_t>(al)] + q[static_cast<std::size_t>(al)]));
          }
        }
        if (const auto* coef = model.b.coefficient(d)) block += *coef;
        h.block(static_cast<Eigen::Index>(r) * m, s * m, m, m) += block;
      }
    }
    if (hermitian_defect(h) > options.hermitian_tol) {
      throw SolveFailure("Galerkin block is not Hermitian");
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h);
    if (solver.info() != Eigen::Success) throw SolveFailure("dense eigensolver did not converge");

    SpectrumResult::Block blk;
    for (const std::size_t i : members) blk.modes.push_back(box.mode(i));
    blk.values = solver.eigenvalues();
    blk.vectors = solver.eigenvectors();
    for (Eigen::Index col = 0; col < blk.vectors.cols(); ++col) {
      Eigen::VectorXcd v = blk.vectors.col(col);
      apply_phase_convention(v);
      blk.vectors.col(col) = v;
      order.emplace_back(blk.values(col), c, col);
    }
    out.blocks.push_back(std::move(blk));
  }

  // Ties are ordered by block and then by column, both deterministic.
  std::sort(order.begin(), order.end());
  out.eigenvalues.resize(static_cast<Eigen::Index>(order.size()));
  for (std::size_t k = 0; k < order.size(); ++k) {
    out.eigenvalues(static_cast<Eigen::Index>(k)) = std::get<0>(order[k]);
    out.location.emplace_back(std::get<1>(order[k]), std::get<2>(order[k]));
  }
  return out;
}

Eigen::VectorXd local_weights(const SpectrumResult& spectrum, const Point2& x) {
  const double norm = 1.0 / (4.0 * boost::math::constants::pi_sqr<double>());
  const Eigen::Index m = spectrum.m;
  // Per block: values of the basis phases at x, then one matrix product.
  std::vector<Eigen::VectorXd> block_weights;
  for (const auto& blk : spectrum.blocks) {
    const Eigen::Index nm = static_cast<Eigen::Index>(blk.modes.size());
    Eigen::VectorXd w = Eigen::VectorXd::Zero(blk.vectors.cols());
    for (Eigen::Index c = 0; c < m; ++c) {
      Eigen::RowVectorXcd phases(nm);
      for (Eigen::Index r = 0; r < nm; ++r) {
        const Mode& q = blk.modes[static_cast<std::size_t>(r)];
        phases(r) = std::polar(1.0, q[0] * x(0) + q[1] * x(1));
      }
      Eigen::RowVectorXcd values(blk.vectors.cols());
      values.setZero();
      for (Eigen::Index r = 0; r < nm; ++r) values += phases(r) * blk.vectors.row(r * m + c);
      w += values.cwiseAbs2().transpose();
    }
    block_weights.push_back(w * norm);
  }
  Eigen::VectorXd out(spectrum.eigenvalues.size());
  for (std::size_t k = 0; k < spectrum.location.size(); ++k) {
    const auto& [b, col] = spectrum.location[k];
    out(static_cast<Eigen::Index>(k)) = block_weights[b](col);
  }
  return out;
}

}  // namespace weylcoef::spectral
