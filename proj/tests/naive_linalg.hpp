#pragma once

// Dense textbook Gauss-Jordan over a self-contained fraction type. This is
// the tests' second opinion on ranks and kernels: different integer backend
// (cpp_int, no GMP), different elimination order, no sparse bookkeeping.
// Keep it boring.

#include <boost/multiprecision/cpp_int.hpp>
#include <utility>
#include <vector>

#include "nilhom/qmatrix.hpp"

namespace naive {

using BigInt = boost::multiprecision::cpp_int;

struct Frac {
  BigInt num = 0;
  BigInt den = 1;

  Frac() = default;
  Frac(long long v) : num(v) {}
  Frac(BigInt n, BigInt d) : num(std::move(n)), den(std::move(d)) { reduce(); }

  void reduce() {
    if (den < 0) {
      num = -num;
      den = -den;
    }
    BigInt g = boost::multiprecision::gcd(num < 0 ? BigInt(-num) : num, den);
    if (g > 1) {
      num /= g;
      den /= g;
    }
    if (num == 0) den = 1;
  }

  bool is_zero() const { return num == 0; }
};

inline Frac operator+(const Frac& a, const Frac& b) {
  return Frac(a.num * b.den + b.num * a.den, a.den * b.den);
}
inline Frac operator-(const Frac& a, const Frac& b) {
  return Frac(a.num * b.den - b.num * a.den, a.den * b.den);
}
inline Frac operator*(const Frac& a, const Frac& b) {
  return Frac(a.num * b.num, a.den * b.den);
}
inline Frac operator/(const Frac& a, const Frac& b) {
  return Frac(a.num * b.den, a.den * b.num);
}
inline Frac operator-(const Frac& a) { return Frac(-a.num, a.den); }
inline bool operator==(const Frac& a, const Frac& b) {
  return a.num == b.num && a.den == b.den;
}
inline bool operator!=(const Frac& a, const Frac& b) { return !(a == b); }

using Mat = std::vector<std::vector<Frac>>;

inline Mat from_qmatrix(const nilhom::QMatrix& m) {
  Mat out(static_cast<std::size_t>(m.rows()),
          std::vector<Frac>(static_cast<std::size_t>(m.cols())));
  for (int i = 0; i < m.rows(); ++i)
    m.for_each_in_row(i, [&](int j, const nilhom::Rat& v) {
      // String round trip keeps the two integer backends decoupled.
      out[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
          Frac(BigInt(nilhom::numerator(v).str()),
               BigInt(nilhom::denominator(v).str()));
    });
  return out;
}

/// In-place reduced row echelon form; returns the pivot columns.
inline std::vector<int> rref(Mat& a) {
  std::vector<int> pivots;
  if (a.empty()) return pivots;
  std::size_t rows = a.size(), cols = a[0].size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t sel = r;
    while (sel < rows && a[sel][c].is_zero()) ++sel;
    if (sel == rows) continue;
    std::swap(a[r], a[sel]);
    Frac inv = Frac(1) / a[r][c];
    for (std::size_t j = c; j < cols; ++j) a[r][j] = a[r][j] * inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || a[i][c].is_zero()) continue;
      Frac f = a[i][c];
      for (std::size_t j = c; j < cols; ++j) a[i][j] = a[i][j] - f * a[r][j];
    }
    pivots.push_back(static_cast<int>(c));
    ++r;
  }
  return pivots;
}

inline int rank(Mat a) { return static_cast<int>(rref(a).size()); }

inline int rank_of(const nilhom::QMatrix& m) { return rank(from_qmatrix(m)); }

/// Kernel basis rows (one per free column) of the linear map given by `a`.
inline Mat kernel(Mat a) {
  std::size_t cols = a.empty() ? 0 : a[0].size();
  std::vector<int> pivots = rref(a);
  std::vector<bool> is_pivot(cols, false);
  for (int p : pivots) is_pivot[static_cast<std::size_t>(p)] = true;
  Mat out;
  for (std::size_t f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    std::vector<Frac> v(cols);
    v[f] = Frac(1);
    for (std::size_t i = 0; i < pivots.size(); ++i)
      v[static_cast<std::size_t>(pivots[i])] = -a[i][f];
    out.push_back(std::move(v));
  }
  return out;
}

inline bool is_zero(const Mat& a) {
  for (const auto& row : a)
    for (const Frac& v : row)
      if (!v.is_zero()) return false;
  return true;
}

inline Mat multiply(const Mat& a, const Mat& b) {
  std::size_t n = a.size(), k = b.size(), m = b.empty() ? 0 : b[0].size();
  Mat out(n, std::vector<Frac>(m));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t l = 0; l < k; ++l) {
      if (a[i][l].is_zero()) continue;
      for (std::size_t j = 0; j < m; ++j)
        out[i][j] = out[i][j] + a[i][l] * b[l][j];
    }
  return out;
}

} // namespace naive
