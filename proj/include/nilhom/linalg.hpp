#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "nilhom/qmatrix.hpp"

namespace nilhom {

namespace detail {

/// Working representation during elimination: column -> value, no zeros.
using MapRow = std::map<int, Rat>;

inline MapRow to_map(const SparseRow& r) {
  MapRow m;
  for (const auto& [c, v] : r) m.emplace(c, v);
  return m;
}

inline SparseRow to_sparse(const MapRow& m) {
  SparseRow r;
  r.reserve(m.size());
  for (const auto& [c, v] : m) r.emplace_back(c, v);
  return r;
}

/// w -= coeff * r. Erases entries that cancel to zero.
inline void axpy(MapRow& w, const Rat& coeff, const SparseRow& r) {
  for (const auto& [c, v] : r) {
    auto it = w.find(c);
    if (it == w.end()) {
      w.emplace_hint(it, c, -coeff * v);
    } else {
      it->second -= coeff * v;
      if (it->second == 0) w.erase(it);
    }
  }
}

} // namespace detail

/**
 * Incremental row-echelon accumulator.
 *
 * Rows are absorbed one at a time; each stored row is monic with distinct
 * leading column (the pivot, first nonzero in column order). Absorption
 * does forward reduction only, so rank and span membership are always
 * current while full back-substitution is deferred to canonical_rows().
 * A linear combination of stored rows has its leading column in the pivot
 * set, hence forward reduction decides membership exactly.
 */
class RrefBuilder {
 public:
  explicit RrefBuilder(int cols) : cols_(cols) {}

  int cols() const { return cols_; }
  int rank() const { return static_cast<int>(rows_.size()); }

  /// Absorbs a row into the span. Returns true if the rank grew.
  bool absorb(const SparseRow& row) {
    detail::MapRow w = detail::to_map(row);
    forward_reduce(w);
    if (w.empty()) return false;
    int pivot = w.begin()->first;
    Rat lead = w.begin()->second;
    if (lead != 1)
      for (auto& [c, v] : w) v /= lead;
    rows_.emplace(pivot, detail::to_sparse(w));
    return true;
  }

  /// Residual of a row after forward reduction; empty iff row is in the span.
  SparseRow reduce(const SparseRow& row) const {
    detail::MapRow w = detail::to_map(row);
    forward_reduce(w);
    return detail::to_sparse(w);
  }

  bool contains(const SparseRow& row) const { return reduce(row).empty(); }

  std::vector<int> pivots() const {
    std::vector<int> p;
    p.reserve(rows_.size());
    for (const auto& [c, _] : rows_) p.push_back(c);
    return p;
  }

  /// Unique reduced row-echelon basis of the span, pivots ascending.
  QMatrix canonical_rows() const {
    // Back-substitute from the largest pivot down; rows below are already
    // canonical when a row is processed, so one sweep suffices. Eliminating
    // at a pivot column c only inserts entries at non-pivot columns > c, so
    // re-seeking with upper_bound(c) is safe.
    std::map<int, SparseRow> canon;
    for (auto it = rows_.rbegin(); it != rows_.rend(); ++it) {
      detail::MapRow w = detail::to_map(it->second);
      auto jt = w.upper_bound(it->first);
      while (jt != w.end()) {
        int c = jt->first;
        auto hit = canon.find(c);
        if (hit != canon.end()) {
          Rat coeff = jt->second;
          detail::axpy(w, coeff, hit->second);
          jt = w.upper_bound(c);
        } else {
          ++jt;
        }
      }
      canon.emplace(it->first, detail::to_sparse(w));
    }
    std::vector<SparseRow> out;
    out.reserve(canon.size());
    for (auto& [_, r] : canon) out.push_back(std::move(r));
    return QMatrix::from_rows(std::move(out), cols_);
  }

 private:
  void forward_reduce(detail::MapRow& w) const {
    while (!w.empty()) {
      auto lead = w.begin();
      auto hit = rows_.find(lead->first);
      if (hit == rows_.end()) return;
      Rat coeff = lead->second;
      detail::axpy(w, coeff, hit->second); // clears the leading column
    }
  }

  int cols_;
  std::map<int, SparseRow> rows_; // pivot column -> monic row
};

struct RrefResult {
  QMatrix matrix;          // canonical reduced row-echelon form, zero rows dropped
  std::vector<int> pivots; // ascending, one per row of matrix
};

inline RrefResult rref(const QMatrix& a) {
  RrefBuilder b(a.cols());
  for (int i = 0; i < a.rows(); ++i) b.absorb(a.row(i));
  return {b.canonical_rows(), b.pivots()};
}

inline int rank(const QMatrix& a) {
  RrefBuilder b(a.cols());
  for (int i = 0; i < a.rows(); ++i) b.absorb(a.row(i));
  return b.rank();
}

/**
 * A linear subspace of Q^ambient held as its canonical reduced row-echelon
 * basis, so two Subspace values describe the same subspace iff their bases
 * are structurally equal.
 */
class Subspace {
 public:
  static Subspace zero(int ambient) {
    return Subspace(ambient, QMatrix(0, ambient), {});
  }

  static Subspace span_of_rows(const QMatrix& rows) {
    RrefResult r = rref(rows);
    return Subspace(rows.cols(), std::move(r.matrix), std::move(r.pivots));
  }

  int ambient() const { return ambient_; }
  int dim() const { return basis_.rows(); }
  const QMatrix& basis() const { return basis_; }
  const std::vector<int>& pivots() const { return pivots_; }

  bool contains(const SparseRow& v) const {
    RrefBuilder b(ambient_);
    for (int i = 0; i < basis_.rows(); ++i) b.absorb(basis_.row(i));
    return b.contains(v);
  }

 private:
  Subspace(int ambient, QMatrix basis, std::vector<int> pivots)
      : ambient_(ambient), basis_(std::move(basis)), pivots_(std::move(pivots)) {}

  int ambient_;
  QMatrix basis_;
  std::vector<int> pivots_;
};

/// True iff a and b are the same subspace. Throws on ambient mismatch.
inline bool subspace_equal(const Subspace& a, const Subspace& b) {
  if (a.ambient() != b.ambient())
    throw std::invalid_argument("subspace_equal: ambient dimension mismatch");
  return a.basis() == b.basis();
}

inline bool operator==(const Subspace& a, const Subspace& b) {
  return subspace_equal(a, b);
}
inline bool operator!=(const Subspace& a, const Subspace& b) { return !(a == b); }

inline Subspace subspace_sum(const Subspace& a, const Subspace& b) {
  if (a.ambient() != b.ambient())
    throw std::invalid_argument("subspace_sum: ambient dimension mismatch");
  RrefBuilder builder(a.ambient());
  for (int i = 0; i < a.basis().rows(); ++i) builder.absorb(a.basis().row(i));
  for (int i = 0; i < b.basis().rows(); ++i) builder.absorb(b.basis().row(i));
  return Subspace::span_of_rows(builder.canonical_rows());
}

/// True iff the sum a + b is direct. Throws on ambient mismatch.
inline bool direct_sum_check(const Subspace& a, const Subspace& b) {
  return subspace_sum(a, b).dim() == a.dim() + b.dim();
}

/**
 * Basis matrix of the right null space {x : a x = 0}, one vector per row.
 * For each non-pivot column f of rref(a) the vector has a 1 at f and
 * -R(i, f) at the i-th pivot column (the free-variable basis).
 */
inline QMatrix kernel_matrix(const QMatrix& a) {
  RrefResult r = rref(a);
  std::vector<bool> is_pivot(static_cast<std::size_t>(a.cols()), false);
  for (int p : r.pivots) is_pivot[p] = true;
  std::vector<SparseRow> rows;
  for (int f = 0; f < a.cols(); ++f) {
    if (is_pivot[f]) continue;
    SparseRow v;
    for (int i = 0; i < r.matrix.rows(); ++i) {
      Rat val = r.matrix.at(i, f);
      if (val != 0) v.emplace_back(r.pivots[i], -val);
    }
    v.emplace_back(f, Rat(1));
    rows.push_back(normalize_row(std::move(v)));
  }
  return QMatrix::from_rows(std::move(rows), a.cols());
}

/// Right null space of a as a canonical Subspace; dim = cols - rank.
inline Subspace kernel_basis(const QMatrix& a) {
  return Subspace::span_of_rows(kernel_matrix(a));
}

/// Column space of a as a canonical Subspace of Q^rows; dim = rank.
inline Subspace image_basis(const QMatrix& a) {
  return Subspace::span_of_rows(a.transpose());
}

struct AffineSolution {
  enum class Kind { Empty, Point, Affine };
  Kind kind = Kind::Empty;
  std::vector<Rat> point;             // one solution, valid unless Empty
  std::optional<Subspace> directions; // kernel of the matrix, valid unless Empty
};

/**
 * Exact solution set of A x = b. Echelonizes the augmented matrix [A | b];
 * a pivot in the appended column certifies inconsistency.
 */
inline AffineSolution solve_affine(const QMatrix& a, const std::vector<Rat>& b) {
  if (static_cast<int>(b.size()) != a.rows())
    throw std::invalid_argument("solve_affine: dimension mismatch");
  int n = a.cols();
  RrefBuilder builder(n + 1);
  for (int i = 0; i < a.rows(); ++i) {
    SparseRow row = a.row(i);
    if (b[i] != 0) row.emplace_back(n, b[i]);
    builder.absorb(row);
  }
  AffineSolution sol;
  for (int p : builder.pivots())
    if (p == n) return sol; // inconsistent

  QMatrix r = builder.canonical_rows();
  std::vector<int> pivots = builder.pivots();
  sol.point.assign(static_cast<std::size_t>(n), Rat(0));
  for (int i = 0; i < r.rows(); ++i) sol.point[pivots[i]] = r.at(i, n);
  Subspace ker = kernel_basis(a);
  sol.kind = ker.dim() == 0 ? AffineSolution::Kind::Point : AffineSolution::Kind::Affine;
  sol.directions = std::move(ker);
  return sol;
}

} // namespace nilhom
