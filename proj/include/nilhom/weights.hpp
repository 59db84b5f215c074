#pragma once

#include <vector>

#include "nilhom/linalg.hpp"
#include "nilhom/nil_lie.hpp"

namespace nilhom {

/// A character of the maximal torus, written additively in the coordinates
/// of M = Z^d where d is the total size of the SL-kind blocks.
using Weight = std::vector<int>;

inline Weight weight_sum(const Weight& a, const Weight& b) {
  Weight s(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) s[i] = a[i] + b[i];
  return s;
}

/**
 * Coordinates of M = Z^d (one coordinate per diagonal entry of each SL
 * block) and the sublattice P spanned by the per-block all-ones vectors.
 * The determinant-one constraint of each SL block makes its block-sum
 * character trivial, so weights act through M/P.
 */
class WeightLattice {
 public:
  static WeightLattice for_pattern(const BlockPattern& pattern) {
    WeightLattice lat;
    lat.block_base_.assign(pattern.sizes.size(), -1);
    for (std::size_t b = 0; b < pattern.sizes.size(); ++b) {
      if (pattern.kinds[b] != BlockKind::SL) continue;
      lat.block_base_[b] = lat.d_;
      lat.d_ += pattern.sizes[b];
    }
    for (std::size_t b = 0; b < pattern.sizes.size(); ++b) {
      if (lat.block_base_[b] < 0) continue;
      Weight ones(static_cast<std::size_t>(lat.d_), 0);
      for (int k = 0; k < pattern.sizes[b]; ++k)
        ones[static_cast<std::size_t>(lat.block_base_[b] + k)] = 1;
      lat.p_basis_.push_back(std::move(ones));
    }
    return lat;
  }

  int d() const { return d_; }
  const std::vector<Weight>& p_basis() const { return p_basis_; }

  /// First M-coordinate of block b, or -1 for Identity-kind blocks.
  int block_base(int b) const { return block_base_[static_cast<std::size_t>(b)]; }

  Weight zero() const { return Weight(static_cast<std::size_t>(d_), 0); }

  /// Columns are the p_basis vectors; d x (number of SL blocks).
  QMatrix p_matrix() const {
    std::vector<SparseRow> rows(static_cast<std::size_t>(d_));
    for (std::size_t j = 0; j < p_basis_.size(); ++j)
      for (int i = 0; i < d_; ++i)
        if (p_basis_[j][static_cast<std::size_t>(i)] != 0)
          rows[static_cast<std::size_t>(i)].emplace_back(static_cast<int>(j), Rat(1));
    return QMatrix::from_rows(std::move(rows), static_cast<int>(p_basis_.size()));
  }

 private:
  int d_ = 0;
  std::vector<int> block_base_;
  std::vector<Weight> p_basis_;
};

/**
 * Weight of a matrix-unit basis vector under the torus action by
 * conjugation: +1 at the source (block, row) coordinate when the source
 * block is SL-kind, -1 at the target (block, col) coordinate when the
 * target block is SL-kind. Identity-kind blocks contribute nothing.
 */
inline Weight weight_of(const UBasisVector& v, const WeightLattice& lat) {
  Weight w = lat.zero();
  int src = lat.block_base(v.i_block);
  if (src >= 0) w[static_cast<std::size_t>(src + v.row)] += 1;
  int dst = lat.block_base(v.j_block);
  if (dst >= 0) w[static_cast<std::size_t>(dst + v.col)] -= 1;
  return w;
}

inline Weight weight_of(const UBasisVector& v, const BlockPattern& pattern) {
  return weight_of(v, WeightLattice::for_pattern(pattern));
}

/// Weight of every u basis vector, indexed by basis position.
inline std::vector<Weight> weight_table(const NilLie& u) {
  WeightLattice lat = WeightLattice::for_pattern(u.pattern());
  std::vector<Weight> t;
  t.reserve(u.basis().size());
  for (const UBasisVector& v : u.basis()) t.push_back(weight_of(v, lat));
  return t;
}

/// True iff w lies in the rational span of the P basis (equivalently the
/// integer span: the all-ones vectors are primitive with disjoint supports,
/// so M/P is torsion-free).
inline bool is_zero_mod_P(const Weight& w, const WeightLattice& lat) {
  std::vector<Rat> rhs(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) rhs[i] = Rat(w[i]);
  AffineSolution sol = solve_affine(lat.p_matrix(), rhs);
  return sol.kind != AffineSolution::Kind::Empty;
}

/**
 * True iff the segment {(1-t) w1 + t w2 : t in [0,1]} meets the rational
 * span of P. Solved exactly: the system [w2 - w1 | -P] (t, c)^T = -w1
 * describes the t values with a P-translate on the segment's line; the
 * feasible t-set is empty, one point, or all of Q, and is intersected
 * with [0,1].
 */
inline bool segment_contains_zero(const Weight& w1, const Weight& w2,
                                  const WeightLattice& lat) {
  if (w1.size() != w2.size())
    throw std::invalid_argument("segment_contains_zero: dimension mismatch");
  int d = lat.d();
  int s = static_cast<int>(lat.p_basis().size());
  std::vector<SparseRow> rows(static_cast<std::size_t>(d));
  std::vector<Rat> rhs(static_cast<std::size_t>(d));
  for (int i = 0; i < d; ++i) {
    std::size_t ii = static_cast<std::size_t>(i);
    if (w2[ii] - w1[ii] != 0) rows[ii].emplace_back(0, Rat(w2[ii] - w1[ii]));
    for (int j = 0; j < s; ++j)
      if (lat.p_basis()[static_cast<std::size_t>(j)][ii] != 0)
        rows[ii].emplace_back(1 + j, Rat(-1));
    rhs[ii] = Rat(-w1[ii]);
  }
  AffineSolution sol = solve_affine(QMatrix::from_rows(std::move(rows), 1 + s), rhs);
  if (sol.kind == AffineSolution::Kind::Empty) return false;
  // If any kernel direction moves t, every rational t is feasible.
  if (sol.kind == AffineSolution::Kind::Affine)
    for (int i = 0; i < sol.directions->basis().rows(); ++i)
      if (sol.directions->basis().at(i, 0) != 0) return true;
  const Rat& t = sol.point[0];
  return t >= 0 && t <= 1;
}

} // namespace nilhom
