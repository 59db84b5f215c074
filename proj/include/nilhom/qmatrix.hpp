#pragma once

#include <algorithm>
#include <cassert>
#include <cstddef>
#include <stdexcept>
#include <tuple>
#include <utility>
#include <vector>

#include "nilhom/rational.hpp"

namespace nilhom {

/// One matrix row in sparse form: (column, value) pairs with strictly
/// increasing columns and no zero values.
using SparseRow = std::vector<std::pair<int, Rat>>;

/// Sorts a row by column and drops zeros; duplicate columns are summed.
inline SparseRow normalize_row(SparseRow row) {
  std::sort(row.begin(), row.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  SparseRow out;
  out.reserve(row.size());
  for (auto& [col, val] : row) {
    if (!out.empty() && out.back().first == col) {
      out.back().second += val;
      if (out.back().second == 0) out.pop_back();
    } else if (val != 0) {
      out.emplace_back(col, std::move(val));
    }
  }
  return out;
}

/**
 * Matrix over Rat. Rows are stored sparse until the fill fraction crosses
 * kDenseThreshold, then the whole matrix flips to dense row storage; the
 * representation is a pure function of the content, so equal matrices
 * always compare equal structurally. The boundary operators this library
 * builds have at most three nonzeros per row, while echelon bases of small
 * weight slices are nearly full.
 */
class QMatrix {
 public:
  static constexpr double kDenseThreshold = 0.25;

  QMatrix() : rows_(0), cols_(0) {}
  QMatrix(int rows, int cols)
      : rows_(rows), cols_(cols), sparse_(static_cast<std::size_t>(rows)) {
    assert(rows >= 0 && cols >= 0);
  }

  static QMatrix identity(int n) {
    std::vector<SparseRow> rows(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) rows[i] = {{i, Rat(1)}};
    return from_rows(std::move(rows), n);
  }

  /// Builds from sparse rows (normalized here). Column bounds are checked.
  static QMatrix from_rows(std::vector<SparseRow> rows, int cols) {
    QMatrix m(static_cast<int>(rows.size()), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      SparseRow r = normalize_row(std::move(rows[i]));
      if (!r.empty() && (r.front().first < 0 || r.back().first >= cols))
        throw std::out_of_range("QMatrix::from_rows: column out of range");
      m.nnz_ += r.size();
      m.sparse_[i] = std::move(r);
    }
    m.choose_representation();
    return m;
  }

  static QMatrix from_dense(const std::vector<std::vector<Rat>>& rows) {
    int nc = rows.empty() ? 0 : static_cast<int>(rows[0].size());
    std::vector<SparseRow> srows(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (static_cast<int>(rows[i].size()) != nc)
        throw std::invalid_argument("QMatrix::from_dense: ragged rows");
      for (int j = 0; j < nc; ++j)
        if (rows[i][j] != 0) srows[i].emplace_back(j, rows[i][j]);
    }
    return from_rows(std::move(srows), nc);
  }

  /// Builds from (row, col, value) triplets; duplicates are summed.
  static QMatrix from_triplets(int rows, int cols,
                               const std::vector<std::tuple<int, int, Rat>>& trips) {
    std::vector<SparseRow> acc(static_cast<std::size_t>(rows));
    for (const auto& [r, c, v] : trips) {
      if (r < 0 || r >= rows || c < 0 || c >= cols)
        throw std::out_of_range("QMatrix::from_triplets: index out of range");
      acc[r].emplace_back(c, v);
    }
    return from_rows(std::move(acc), cols);
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  bool stored_dense() const { return dense_; }
  std::size_t nonzeros() const { return nnz_; }

  SparseRow row(int i) const {
    if (!dense_) return sparse_[i];
    SparseRow r;
    for (int j = 0; j < cols_; ++j)
      if (drows_[i][j] != 0) r.emplace_back(j, drows_[i][j]);
    return r;
  }

  Rat at(int i, int j) const {
    if (dense_) return drows_[i][j];
    const SparseRow& r = sparse_[i];
    auto it = std::lower_bound(r.begin(), r.end(), j,
                               [](const auto& e, int col) { return e.first < col; });
    return (it != r.end() && it->first == j) ? it->second : Rat(0);
  }

  std::vector<Rat> row_dense(int i) const {
    if (dense_) return drows_[i];
    std::vector<Rat> out(cols_, Rat(0));
    for (const auto& [c, v] : sparse_[i]) out[c] = v;
    return out;
  }

  /// Calls fn(col, value) for each nonzero of row i in column order.
  template <class Fn>
  void for_each_in_row(int i, Fn&& fn) const {
    if (dense_) {
      for (int j = 0; j < cols_; ++j)
        if (drows_[i][j] != 0) fn(j, drows_[i][j]);
    } else {
      for (const auto& [c, v] : sparse_[i]) fn(c, v);
    }
  }

  QMatrix transpose() const {
    std::vector<SparseRow> cols(static_cast<std::size_t>(cols_));
    for (int i = 0; i < rows_; ++i)
      for_each_in_row(i, [&](int c, const Rat& v) { cols[c].emplace_back(i, v); });
    return from_rows(std::move(cols), rows_);
  }

  QMatrix multiply(const QMatrix& rhs) const {
    if (cols_ != rhs.rows_)
      throw std::invalid_argument("QMatrix::multiply: dimension mismatch");
    std::vector<SparseRow> out(static_cast<std::size_t>(rows_));
    for (int i = 0; i < rows_; ++i) {
      SparseRow acc;
      for_each_in_row(i, [&](int k, const Rat& v) {
        rhs.for_each_in_row(k, [&](int j, const Rat& w) { acc.emplace_back(j, v * w); });
      });
      out[i] = std::move(acc);
    }
    return from_rows(std::move(out), rhs.cols_);
  }

  /// Matrix-vector product, dense vector in and out.
  std::vector<Rat> apply(const std::vector<Rat>& x) const {
    if (static_cast<int>(x.size()) != cols_)
      throw std::invalid_argument("QMatrix::apply: dimension mismatch");
    std::vector<Rat> y(static_cast<std::size_t>(rows_), Rat(0));
    for (int i = 0; i < rows_; ++i)
      for_each_in_row(i, [&](int c, const Rat& v) { y[i] += v * x[c]; });
    return y;
  }

  bool is_zero() const { return nnz_ == 0; }

  friend bool operator==(const QMatrix& a, const QMatrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_ || a.nnz_ != b.nnz_) return false;
    if (a.dense_ == b.dense_)
      return a.dense_ ? a.drows_ == b.drows_ : a.sparse_ == b.sparse_;
    for (int i = 0; i < a.rows_; ++i)
      if (a.row(i) != b.row(i)) return false;
    return true;
  }
  friend bool operator!=(const QMatrix& a, const QMatrix& b) { return !(a == b); }

 private:
  void choose_representation() {
    double cells = static_cast<double>(rows_) * static_cast<double>(cols_);
    bool want_dense = cells > 0 && static_cast<double>(nnz_) > kDenseThreshold * cells;
    if (want_dense == dense_) return;
    if (want_dense) {
      drows_.assign(static_cast<std::size_t>(rows_),
                    std::vector<Rat>(static_cast<std::size_t>(cols_), Rat(0)));
      for (int i = 0; i < rows_; ++i)
        for (const auto& [c, v] : sparse_[i]) drows_[i][c] = v;
      sparse_.clear();
      sparse_.shrink_to_fit();
      dense_ = true;
    }
  }

  int rows_;
  int cols_;
  bool dense_ = false;
  std::size_t nnz_ = 0;
  std::vector<SparseRow> sparse_;            // valid when !dense_
  std::vector<std::vector<Rat>> drows_;      // valid when dense_
};

} // namespace nilhom
