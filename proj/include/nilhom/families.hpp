#pragma once

#include <array>
#include <set>
#include <stdexcept>
#include <vector>

#include "nilhom/boundary.hpp"
#include "nilhom/linalg.hpp"
#include "nilhom/nil_lie.hpp"
#include "nilhom/wedge.hpp"

namespace nilhom {

/**
 * The six explicit generating families of Ker(d2) for the 4-block
 * (Identity, SL, SL, Identity) shape, as subspaces of Lambda^2 u:
 *
 *   (1) wedges of commuting block pairs staying inside blocks 1..4 of the
 *       "short" kind: u12^u12, u23^u23, u34^u34, u13^u23, u23^u24,
 *       u12^u13, u24^u34, u12^u34;
 *   (2) u14^u, u13^u13, u24^u24, u13^u24;
 *   (3) e_{i1 j2}^e_{k2 l3} with j2 != k2 and e_{i2 j3}^e_{k3 l4} with
 *       j3 != k3 (indices that would otherwise chain into a bracket);
 *   (4) the same off-index constraint for pairs reaching block 4:
 *       e_{i1 j2}^e_{k2 l4} with j2 != k2, e_{i1 j3}^e_{k3 l4} with j3 != k3;
 *   (5) zero-sum combinations of the chains e_{i1 j2}^e_{j2 k3} over j2 and
 *       e_{i2 j3}^e_{j3 k4} over j3 (all terms share the bracket target);
 *   (6) zero-sum combinations mixing the two chains into block 4:
 *       e_{i1 j2}^e_{j2 k4} over j2 together with e_{i1 j3}^e_{j3 k4} over j3.
 *
 * b is the span of (2), (4), (6); h is the span of (1), (3), (5). The
 * structural claims Im(d3) = b and Ker(d2) = b (+) h are verified, not
 * assumed; see verify_structure. The image comparison in fact comes out
 * false whenever a middle block has size >= 2: triples with a repeated
 * factor (u12^u12^u23, u12^u23^u23 and their mirrors) have nonzero
 * boundaries that fill the mixed cells u12^u13, u13^u23, u23^u24,
 * u24^u34, all of which lie in h, so Im(d3) strictly contains b. The
 * homology tests pin the explicit counterexample and the corrected
 * image decomposition.
 */
struct FamilySpans {
  std::array<Subspace, 6> family;
  Subspace b;
  Subspace h;
};

inline FamilySpans kerd2_families(const NilLie& u) {
  const BlockPattern& pat = u.pattern();
  if (!pat.is_family_shape())
    throw std::invalid_argument(
        "kerd2_families: pattern is not the 4-block (Identity, SL, SL, Identity) shape");
  int n1 = pat.sizes[0], n2 = pat.sizes[1], n3 = pat.sizes[2], n4 = pat.sizes[3];
  WedgeBasis2 w2(u.dim());

  auto block_indices = [&](int i, int j) {
    std::vector<int> v;
    for (int r = 0; r < pat.sizes[static_cast<std::size_t>(i)]; ++r)
      for (int c = 0; c < pat.sizes[static_cast<std::size_t>(j)]; ++c)
        v.push_back(u.basis_index(i, j, r, c));
    return v;
  };
  std::vector<int> u12 = block_indices(0, 1), u13 = block_indices(0, 2),
                   u14 = block_indices(0, 3), u23 = block_indices(1, 2),
                   u24 = block_indices(1, 3), u34 = block_indices(2, 3);

  auto wedge = [&](int a, int b) { return w2.index_of(std::min(a, b), std::max(a, b)); };
  auto add_within = [&](std::set<int>& s, const std::vector<int>& v) {
    for (std::size_t i = 0; i < v.size(); ++i)
      for (std::size_t j = i + 1; j < v.size(); ++j) s.insert(wedge(v[i], v[j]));
  };
  auto add_between = [&](std::set<int>& s, const std::vector<int>& v,
                         const std::vector<int>& w) {
    for (int a : v)
      for (int b : w) s.insert(wedge(a, b));
  };
  auto span_of_set = [&](const std::set<int>& s) {
    std::vector<SparseRow> rows;
    rows.reserve(s.size());
    for (int idx : s) rows.push_back({{idx, Rat(1)}});
    return Subspace::span_of_rows(QMatrix::from_rows(std::move(rows), w2.size()));
  };
  // Differences of consecutive members span the zero-coefficient-sum
  // hyperplane of the span of the listed wedges.
  auto zero_sum_rows = [&](std::vector<SparseRow>& rows, const std::vector<int>& wedges) {
    for (std::size_t i = 0; i + 1 < wedges.size(); ++i)
      rows.push_back({{wedges[i], Rat(1)}, {wedges[i + 1], Rat(-1)}});
  };

  std::set<int> f1;
  add_within(f1, u12);
  add_within(f1, u23);
  add_within(f1, u34);
  add_between(f1, u13, u23);
  add_between(f1, u23, u24);
  add_between(f1, u12, u13);
  add_between(f1, u24, u34);
  add_between(f1, u12, u34);

  std::set<int> f2;
  for (int a : u14)
    for (int b = 0; b < u.dim(); ++b)
      if (b != a) f2.insert(wedge(a, b));
  add_within(f2, u13);
  add_within(f2, u24);
  add_between(f2, u13, u24);

  std::set<int> f3;
  for (int i1 = 0; i1 < n1; ++i1)
    for (int j2 = 0; j2 < n2; ++j2)
      for (int k2 = 0; k2 < n2; ++k2) {
        if (j2 == k2) continue;
        for (int l3 = 0; l3 < n3; ++l3)
          f3.insert(wedge(u.basis_index(0, 1, i1, j2), u.basis_index(1, 2, k2, l3)));
      }
  for (int i2 = 0; i2 < n2; ++i2)
    for (int j3 = 0; j3 < n3; ++j3)
      for (int k3 = 0; k3 < n3; ++k3) {
        if (j3 == k3) continue;
        for (int l4 = 0; l4 < n4; ++l4)
          f3.insert(wedge(u.basis_index(1, 2, i2, j3), u.basis_index(2, 3, k3, l4)));
      }

  std::set<int> f4;
  for (int i1 = 0; i1 < n1; ++i1)
    for (int j2 = 0; j2 < n2; ++j2)
      for (int k2 = 0; k2 < n2; ++k2) {
        if (j2 == k2) continue;
        for (int l4 = 0; l4 < n4; ++l4)
          f4.insert(wedge(u.basis_index(0, 1, i1, j2), u.basis_index(1, 3, k2, l4)));
      }
  for (int i1 = 0; i1 < n1; ++i1)
    for (int j3 = 0; j3 < n3; ++j3)
      for (int k3 = 0; k3 < n3; ++k3) {
        if (j3 == k3) continue;
        for (int l4 = 0; l4 < n4; ++l4)
          f4.insert(wedge(u.basis_index(0, 2, i1, j3), u.basis_index(2, 3, k3, l4)));
      }

  std::vector<SparseRow> f5_rows;
  for (int i1 = 0; i1 < n1; ++i1)
    for (int k3 = 0; k3 < n3; ++k3) {
      std::vector<int> chain;
      for (int j2 = 0; j2 < n2; ++j2)
        chain.push_back(wedge(u.basis_index(0, 1, i1, j2), u.basis_index(1, 2, j2, k3)));
      zero_sum_rows(f5_rows, chain);
    }
  for (int i2 = 0; i2 < n2; ++i2)
    for (int k4 = 0; k4 < n4; ++k4) {
      std::vector<int> chain;
      for (int j3 = 0; j3 < n3; ++j3)
        chain.push_back(wedge(u.basis_index(1, 2, i2, j3), u.basis_index(2, 3, j3, k4)));
      zero_sum_rows(f5_rows, chain);
    }

  std::vector<SparseRow> f6_rows;
  for (int i1 = 0; i1 < n1; ++i1)
    for (int k4 = 0; k4 < n4; ++k4) {
      std::vector<int> chain;
      for (int j2 = 0; j2 < n2; ++j2)
        chain.push_back(wedge(u.basis_index(0, 1, i1, j2), u.basis_index(1, 3, j2, k4)));
      for (int j3 = 0; j3 < n3; ++j3)
        chain.push_back(wedge(u.basis_index(0, 2, i1, j3), u.basis_index(2, 3, j3, k4)));
      zero_sum_rows(f6_rows, chain);
    }

  Subspace s1 = span_of_set(f1);
  Subspace s2 = span_of_set(f2);
  Subspace s3 = span_of_set(f3);
  Subspace s4 = span_of_set(f4);
  Subspace s5 = Subspace::span_of_rows(QMatrix::from_rows(std::move(f5_rows), w2.size()));
  Subspace s6 = Subspace::span_of_rows(QMatrix::from_rows(std::move(f6_rows), w2.size()));
  Subspace b = subspace_sum(subspace_sum(s2, s4), s6);
  Subspace h = subspace_sum(subspace_sum(s1, s3), s5);
  return FamilySpans{{s1, s2, s3, s4, s5, s6}, std::move(b), std::move(h)};
}

/// Exact verification of the explicit-generator claims on one pattern.
struct StructureReport {
  std::array<int, 6> family_dims{};
  int dim_ker_d2 = 0;
  int dim_b = 0;
  int dim_h = 0;
  int dim_image = 0;
  bool families_span_kernel = false;
  bool image_equals_b = false;
  bool b_h_direct = false;
  bool b_plus_h_is_kernel = false;

  bool all_ok() const {
    return families_span_kernel && image_equals_b && b_h_direct && b_plus_h_is_kernel;
  }
};

inline StructureReport verify_structure(const NilLie& u) {
  FamilySpans fams = kerd2_families(u);
  Subspace ker = kernel_basis(d2_matrix(u));
  Subspace im = image_basis(d3_matrix(u));

  StructureReport rep;
  for (std::size_t i = 0; i < 6; ++i) rep.family_dims[i] = fams.family[i].dim();
  rep.dim_ker_d2 = ker.dim();
  rep.dim_b = fams.b.dim();
  rep.dim_h = fams.h.dim();
  rep.dim_image = im.dim();

  Subspace all = subspace_sum(fams.b, fams.h);
  rep.families_span_kernel = subspace_equal(all, ker);
  rep.image_equals_b = subspace_equal(im, fams.b);
  rep.b_h_direct = direct_sum_check(fams.b, fams.h);
  rep.b_plus_h_is_kernel = rep.b_h_direct && subspace_equal(all, ker);
  return rep;
}

} // namespace nilhom
