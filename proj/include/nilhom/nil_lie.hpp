#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

#include "nilhom/block_pattern.hpp"
#include "nilhom/linalg.hpp"

namespace nilhom {

/// Matrix unit e_{pq} sitting in block (i_block, j_block), i_block < j_block,
/// at local position (row, col).
struct UBasisVector {
  int i_block = 0;
  int j_block = 0;
  int row = 0;
  int col = 0;

  friend bool operator==(const UBasisVector&, const UBasisVector&) = default;
};

/// One term of a bracket value: sign * e_index with sign in {-1, +1}.
struct BracketTerm {
  int index;
  int sign;
};

/**
 * The nilpotent Lie algebra u of strictly upper block-triangular matrices
 * for a pattern. Basis: matrix units of the off-diagonal blocks, ordered
 * lexicographically by (i_block, j_block, row, col). The bracket is the
 * matrix commutator [e_pq, e_rs] = delta_qr e_ps - delta_sp e_rq; for two
 * strictly upper units at most one term survives, so every bracket value
 * is zero or a signed basis vector.
 */
class NilLie {
 public:
  static NilLie build(const BlockPattern& pattern) {
    pattern.validate();
    NilLie u;
    u.pattern_ = pattern;
    int nb = pattern.block_count();
    u.pair_offset_.assign(static_cast<std::size_t>(nb * nb), -1);
    int off = 0;
    for (int i = 0; i < nb; ++i)
      for (int j = i + 1; j < nb; ++j) {
        u.pair_offset_[static_cast<std::size_t>(i * nb + j)] = off;
        for (int r = 0; r < pattern.sizes[i]; ++r)
          for (int c = 0; c < pattern.sizes[j]; ++c)
            u.basis_.push_back({i, j, r, c});
        off += pattern.sizes[i] * pattern.sizes[j];
      }
    u.build_bracket_table();
    if (u.dim() <= kJacobiCheckDim) u.check_jacobi();
    return u;
  }

  const BlockPattern& pattern() const { return pattern_; }
  int dim() const { return static_cast<int>(basis_.size()); }
  const std::vector<UBasisVector>& basis() const { return basis_; }
  const UBasisVector& basis_vector(int idx) const { return basis_[static_cast<std::size_t>(idx)]; }

  int basis_index(int i_block, int j_block, int row, int col) const {
    int nb = pattern_.block_count();
    int off = pair_offset_[static_cast<std::size_t>(i_block * nb + j_block)];
    if (off < 0) throw std::invalid_argument("NilLie::basis_index: invalid block pair");
    return off + row * pattern_.sizes[static_cast<std::size_t>(j_block)] + col;
  }

  /// [e_a, e_b]; empty means the bracket vanishes.
  std::optional<BracketTerm> bracket(int a, int b) const {
    const auto& e = table_[static_cast<std::size_t>(a) * basis_.size() + static_cast<std::size_t>(b)];
    if (e.second == 0) return std::nullopt;
    return BracketTerm{e.first, e.second};
  }

  /// Span of all brackets of basis pairs, [u, u] as a coordinate subspace.
  Subspace derived_subalgebra() const {
    std::vector<SparseRow> rows;
    std::vector<bool> seen(basis_.size(), false);
    for (std::size_t a = 0; a < basis_.size(); ++a)
      for (std::size_t b = a + 1; b < basis_.size(); ++b) {
        const auto& e = table_[a * basis_.size() + b];
        if (e.second != 0 && !seen[static_cast<std::size_t>(e.first)]) {
          seen[static_cast<std::size_t>(e.first)] = true;
          rows.push_back({{e.first, Rat(1)}});
        }
      }
    return Subspace::span_of_rows(QMatrix::from_rows(std::move(rows), dim()));
  }

  /// Coordinate span of the basis vectors in block pair (i, j).
  Subspace block_span(int i, int j) const {
    int nb = pattern_.block_count();
    if (i < 0 || j >= nb || i >= j) throw std::invalid_argument("NilLie::block_span: invalid block pair");
    std::vector<SparseRow> rows;
    for (int r = 0; r < pattern_.sizes[static_cast<std::size_t>(i)]; ++r)
      for (int c = 0; c < pattern_.sizes[static_cast<std::size_t>(j)]; ++c)
        rows.push_back({{basis_index(i, j, r, c), Rat(1)}});
    return Subspace::span_of_rows(QMatrix::from_rows(std::move(rows), dim()));
  }

 private:
  static constexpr int kJacobiCheckDim = 40;

  void build_bracket_table() {
    std::size_t n = basis_.size();
    table_.assign(n * n, {0, 0});
    // Global matrix coordinates of each unit.
    std::vector<std::pair<int, int>> global(n);
    for (std::size_t a = 0; a < n; ++a) {
      const UBasisVector& v = basis_[a];
      global[a] = {pattern_.offset(v.i_block) + v.row, pattern_.offset(v.j_block) + v.col};
    }
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) {
        if (a == b) continue;
        const UBasisVector& va = basis_[a];
        const UBasisVector& vb = basis_[b];
        // Both candidates cannot fire at once: that would need the product
        // of two strictly upper units to be lower-triangular.
        if (global[a].second == global[b].first) {
          table_[a * n + b] = {basis_index(va.i_block, vb.j_block, va.row, vb.col), +1};
        } else if (global[b].second == global[a].first) {
          table_[a * n + b] = {basis_index(vb.i_block, va.j_block, vb.row, va.col), -1};
        }
      }
  }

  void check_jacobi() const {
    std::size_t n = basis_.size();
    auto acc = [&](std::map<int, int>& sum, int outer, std::optional<BracketTerm> inner) {
      if (!inner) return;
      auto t = bracket(outer, inner->index);
      if (t) sum[t->index] += inner->sign * t->sign;
    };
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = x + 1; y < n; ++y)
        for (std::size_t z = y + 1; z < n; ++z) {
          std::map<int, int> sum;
          acc(sum, static_cast<int>(x), bracket(static_cast<int>(y), static_cast<int>(z)));
          acc(sum, static_cast<int>(y), bracket(static_cast<int>(z), static_cast<int>(x)));
          acc(sum, static_cast<int>(z), bracket(static_cast<int>(x), static_cast<int>(y)));
          for (const auto& [_, c] : sum)
            if (c != 0) throw std::logic_error("NilLie: Jacobi identity violated");
        }
  }

  BlockPattern pattern_;
  std::vector<UBasisVector> basis_;
  std::vector<int> pair_offset_;                 // (i_block * K + j_block) -> first basis index
  std::vector<std::pair<int, int>> table_;       // (a * dim + b) -> (index, sign); sign 0 = zero
};

inline NilLie build_u(const BlockPattern& pattern) { return NilLie::build(pattern); }

} // namespace nilhom
