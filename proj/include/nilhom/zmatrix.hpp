#pragma once

#include <stdexcept>
#include <vector>

#include "nilhom/linalg.hpp"
#include "nilhom/rational.hpp"

namespace nilhom {

/// Dense matrix over the integers; the workhorse for the SL_n(Z) and
/// Mat_{n x m}(Z) manipulations. Small and dense by nature, no sparsity.
class ZMatrix {
 public:
  ZMatrix() : rows_(0), cols_(0) {}
  ZMatrix(int rows, int cols)
      : rows_(rows), cols_(cols),
        e_(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols), Int(0)) {}

  static ZMatrix identity(int n) {
    ZMatrix m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
  }

  static ZMatrix from_rows(const std::vector<std::vector<Int>>& rows) {
    int nc = rows.empty() ? 0 : static_cast<int>(rows[0].size());
    ZMatrix m(static_cast<int>(rows.size()), nc);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (static_cast<int>(rows[i].size()) != nc)
        throw std::invalid_argument("ZMatrix::from_rows: ragged rows");
      for (int j = 0; j < nc; ++j) m.at(static_cast<int>(i), j) = rows[i][static_cast<std::size_t>(j)];
    }
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  Int& at(int i, int j) { return e_[static_cast<std::size_t>(i) * cols_ + static_cast<std::size_t>(j)]; }
  const Int& at(int i, int j) const {
    return e_[static_cast<std::size_t>(i) * cols_ + static_cast<std::size_t>(j)];
  }

  ZMatrix mul(const ZMatrix& rhs) const {
    if (cols_ != rhs.rows_) throw std::invalid_argument("ZMatrix::mul: dimension mismatch");
    ZMatrix out(rows_, rhs.cols_);
    for (int i = 0; i < rows_; ++i)
      for (int k = 0; k < cols_; ++k) {
        const Int& v = at(i, k);
        if (v == 0) continue;
        for (int j = 0; j < rhs.cols_; ++j) out.at(i, j) += v * rhs.at(k, j);
      }
    return out;
  }

  ZMatrix add(const ZMatrix& rhs) const {
    if (rows_ != rhs.rows_ || cols_ != rhs.cols_)
      throw std::invalid_argument("ZMatrix::add: dimension mismatch");
    ZMatrix out = *this;
    for (std::size_t i = 0; i < e_.size(); ++i) out.e_[i] += rhs.e_[i];
    return out;
  }

  ZMatrix neg() const {
    ZMatrix out = *this;
    for (Int& v : out.e_) v = -v;
    return out;
  }

  ZMatrix scale(const Int& k) const {
    ZMatrix out = *this;
    for (Int& v : out.e_) v *= k;
    return out;
  }

  bool is_zero() const {
    for (const Int& v : e_)
      if (v != 0) return false;
    return true;
  }

  friend bool operator==(const ZMatrix&, const ZMatrix&) = default;

  /// Fraction-free Gaussian elimination; exact integer determinant.
  Int det() const {
    if (rows_ != cols_) throw std::invalid_argument("ZMatrix::det: not square");
    int n = rows_;
    if (n == 0) return 1;
    ZMatrix m = *this;
    Int prev = 1;
    int sign = 1;
    for (int k = 0; k + 1 < n; ++k) {
      if (m.at(k, k) == 0) {
        int swap_row = -1;
        for (int i = k + 1; i < n; ++i)
          if (m.at(i, k) != 0) {
            swap_row = i;
            break;
          }
        if (swap_row < 0) return 0;
        for (int j = 0; j < n; ++j) std::swap(m.at(k, j), m.at(swap_row, j));
        sign = -sign;
      }
      for (int i = k + 1; i < n; ++i)
        for (int j = k + 1; j < n; ++j)
          m.at(i, j) = (m.at(i, j) * m.at(k, k) - m.at(i, k) * m.at(k, j)) / prev;
      prev = m.at(k, k);
    }
    return sign > 0 ? m.at(n - 1, n - 1) : -m.at(n - 1, n - 1);
  }

  bool is_unimodular() const {
    Int d = det();
    return d == 1 || d == -1;
  }

  /// Inverse of a matrix with det +-1 (stays integral by Cramer).
  ZMatrix inverse_unimodular() const {
    if (!is_unimodular()) throw std::invalid_argument("ZMatrix: not unimodular");
    int n = rows_;
    std::vector<SparseRow> aug(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j)
        if (at(i, j) != 0) aug[static_cast<std::size_t>(i)].emplace_back(j, Rat(at(i, j)));
      aug[static_cast<std::size_t>(i)].emplace_back(n + i, Rat(1));
    }
    RrefResult r = rref(QMatrix::from_rows(std::move(aug), 2 * n));
    ZMatrix out(n, n);
    for (int i = 0; i < n; ++i) {
      if (i >= static_cast<int>(r.pivots.size()) || r.pivots[static_cast<std::size_t>(i)] != i)
        throw std::logic_error("ZMatrix: unimodular matrix failed to invert");
      for (int j = 0; j < n; ++j) {
        Rat v = r.matrix.at(i, n + j);
        if (!is_integer(v)) throw std::logic_error("ZMatrix: non-integer inverse entry");
        out.at(i, j) = numerator(v);
      }
    }
    return out;
  }

 private:
  int rows_;
  int cols_;
  std::vector<Int> e_;
};

} // namespace nilhom
