#pragma once

// Shared helpers for the test suite. The bracket oracle here works with
// dense N x N integer matrices and never touches the structure-constant
// table, so it can sit in judgement over it.

#include <optional>
#include <string>
#include <vector>

#include "nilhom/nil_lie.hpp"
#include "nilhom/qmatrix.hpp"
#include "naive_linalg.hpp"

namespace support {

inline nilhom::BlockPattern make_pattern(std::vector<int> sizes,
                                         const std::string& kinds,
                                         std::optional<long long> prime = {}) {
  nilhom::BlockPattern p;
  p.sizes = std::move(sizes);
  for (char c : kinds)
    p.kinds.push_back(c == 's' ? nilhom::BlockKind::SL
                               : nilhom::BlockKind::Identity);
  if (prime) p.prime = nilhom::Int(*prime);
  p.validate();
  return p;
}

using DenseInt = std::vector<std::vector<long long>>;

inline DenseInt unit_matrix(const nilhom::NilLie& u, int idx) {
  int N = u.pattern().total_size();
  DenseInt m(static_cast<std::size_t>(N), std::vector<long long>(static_cast<std::size_t>(N), 0));
  const nilhom::UBasisVector& v = u.basis_vector(idx);
  int r = u.pattern().offset(v.i_block) + v.row;
  int c = u.pattern().offset(v.j_block) + v.col;
  m[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] = 1;
  return m;
}

inline DenseInt commutator(const DenseInt& a, const DenseInt& b) {
  std::size_t N = a.size();
  DenseInt out(N, std::vector<long long>(N, 0));
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t k = 0; k < N; ++k) {
      if (a[i][k] == 0 && b[i][k] == 0) continue;
      for (std::size_t j = 0; j < N; ++j)
        out[i][j] += a[i][k] * b[k][j] - b[i][k] * a[k][j];
    }
  return out;
}

/// Expresses a dense matrix in the u basis: the coefficient of each basis
/// vector, or nullopt if any entry falls outside the strict upper block area.
inline std::optional<std::vector<long long>> in_u_coordinates(
    const nilhom::NilLie& u, const DenseInt& m) {
  int N = u.pattern().total_size();
  std::vector<long long> coeff(static_cast<std::size_t>(u.dim()), 0);
  for (int r = 0; r < N; ++r)
    for (int c = 0; c < N; ++c) {
      long long v = m[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)];
      if (v == 0) continue;
      bool placed = false;
      for (int idx = 0; idx < u.dim(); ++idx) {
        const nilhom::UBasisVector& bv = u.basis_vector(idx);
        if (u.pattern().offset(bv.i_block) + bv.row == r &&
            u.pattern().offset(bv.j_block) + bv.col == c) {
          coeff[static_cast<std::size_t>(idx)] = v;
          placed = true;
          break;
        }
      }
      if (!placed) return std::nullopt;
    }
  return coeff;
}

inline nilhom::Rat frac_to_rat(const naive::Frac& f) {
  return nilhom::Rat(nilhom::Int(f.num.str()), nilhom::Int(f.den.str()));
}

inline nilhom::QMatrix to_qmatrix(const naive::Mat& m, int cols) {
  std::vector<nilhom::SparseRow> rows;
  for (const auto& r : m) {
    nilhom::SparseRow row;
    for (std::size_t j = 0; j < r.size(); ++j)
      if (!r[j].is_zero()) row.emplace_back(static_cast<int>(j), frac_to_rat(r[j]));
    rows.push_back(std::move(row));
  }
  return nilhom::QMatrix::from_rows(std::move(rows), cols);
}

} // namespace support
