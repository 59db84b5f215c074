#pragma once

#include <tuple>
#include <vector>

#include "nilhom/nil_lie.hpp"
#include "nilhom/qmatrix.hpp"
#include "nilhom/wedge.hpp"

namespace nilhom {

/**
 * Boundary map d2 : Lambda^2 u -> u, d2(x1 ^ x2) = -[x1, x2].
 * Rows are u coordinates, columns are wedge pairs; the chain property
 * d2 * d3 = 0 holds exactly (it encodes the Jacobi identity).
 */
inline QMatrix d2_matrix(const NilLie& u) {
  WedgeBasis2 w2(u.dim());
  std::vector<std::tuple<int, int, Rat>> trips;
  for (int idx = 0; idx < w2.size(); ++idx) {
    const auto& [a, b] = w2.pair(idx);
    if (auto t = u.bracket(a, b)) trips.emplace_back(t->index, idx, Rat(-t->sign));
  }
  return QMatrix::from_triplets(u.dim(), w2.size(), trips);
}

/**
 * Boundary map d3 : Lambda^3 u -> Lambda^2 u,
 * d3(x1 ^ x2 ^ x3) = x3 ^ [x1, x2] + x2 ^ [x3, x1] + x1 ^ [x2, x3].
 * Each bracket is zero or a signed basis vector, so every column has at
 * most three nonzeros; wedge factors are sorted with the permutation sign.
 */
inline QMatrix d3_matrix(const NilLie& u) {
  WedgeBasis2 w2(u.dim());
  WedgeBasis3 w3(u.dim());
  std::vector<std::tuple<int, int, Rat>> trips;
  auto add_term = [&](int col, int partner, const std::optional<BracketTerm>& t) {
    if (!t || t->index == partner) return; // zero bracket or repeated wedge factor
    auto [pair_idx, perm_sign] = w2.oriented(partner, t->index);
    trips.emplace_back(pair_idx, col, Rat(t->sign * perm_sign));
  };
  for (int col = 0; col < w3.size(); ++col) {
    const auto& [a, b, c] = w3.triple(col);
    add_term(col, c, u.bracket(a, b));
    add_term(col, b, u.bracket(c, a));
    add_term(col, a, u.bracket(b, c));
  }
  return QMatrix::from_triplets(w2.size(), w3.size(), trips);
}

} // namespace nilhom
