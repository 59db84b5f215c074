#pragma once

#include <algorithm>
#include <map>
#include <mutex>
#include <stdexcept>
#include <thread>
#include <tuple>
#include <vector>

#include "nilhom/boundary.hpp"
#include "nilhom/linalg.hpp"
#include "nilhom/nil_lie.hpp"
#include "nilhom/weights.hpp"
#include "nilhom/wedge.hpp"

namespace nilhom {

struct HomologyOptions {
  bool graded = true;    // weight-slice computation; false forces full matrices
  unsigned threads = 0;  // 0 = one worker per hardware thread
  bool witnesses = false;
};

/// H1(u) = u / [u, u].
struct H1Result {
  int dim = 0;
  std::vector<Weight> weights;    // sorted multiset
  std::vector<int> complement;    // u basis indices spanning a complement of [u, u]
};

struct WeightSliceDims {
  int h1 = 0;
  int h2 = 0;
};

struct HomologyResult {
  int dim_u = 0;
  long long lambda2 = 0;
  long long lambda3 = 0;
  int rank_d2 = 0;
  int rank_d3 = 0;
  int ker_d2_dim = 0;
  int h1_dim = 0;
  int h2_dim = 0;
  bool graded = true;
  std::vector<Weight> h1_weights; // sorted multisets
  std::vector<Weight> h2_weights;
  std::map<Weight, WeightSliceDims> per_weight;             // graded runs only
  std::map<Weight, std::vector<SparseRow>> h2_witnesses;    // wedge-pair coordinates
};

/**
 * Every bracket value is a signed basis vector, so [u, u] is the coordinate
 * span of the bracket-image basis indices and the remaining indices span a
 * complement. Coordinate vectors are weight vectors, so the complement is
 * weight-homogeneous; for the 4-block (Id, SL, SL, Id) shape it is exactly
 * the span of blocks (1,2), (2,3), (3,4).
 */
inline H1Result h1(const NilLie& u) {
  int n = u.dim();
  std::vector<bool> derived(static_cast<std::size_t>(n), false);
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      if (auto t = u.bracket(a, b)) derived[static_cast<std::size_t>(t->index)] = true;
  std::vector<Weight> wt = weight_table(u);
  H1Result r;
  for (int i = 0; i < n; ++i)
    if (!derived[static_cast<std::size_t>(i)]) {
      r.complement.push_back(i);
      r.weights.push_back(wt[static_cast<std::size_t>(i)]);
    }
  r.dim = static_cast<int>(r.complement.size());
  std::sort(r.weights.begin(), r.weights.end());
  return r;
}

namespace detail {

/// One weight class of the degree-2/3 chain spaces.
struct WeightSlice {
  std::vector<int> pairs;              // global wedge-pair indices
  std::vector<SparseRow> d3_columns;   // in local pair coordinates
};

struct SliceOutcome {
  int rank_d2 = 0;
  int rank_d3 = 0;
  int h2 = 0;
  std::vector<SparseRow> witnesses;    // local pair coordinates
};

inline SliceOutcome run_slice(const NilLie& u, const WedgeBasis2& w2,
                              const WeightSlice& slice, bool want_witnesses) {
  int np = static_cast<int>(slice.pairs.size());
  // Local d2: rows are the u coordinates hit by brackets of this slice.
  std::map<int, int> urow;
  std::vector<std::tuple<int, int, Rat>> trips;
  for (int lp = 0; lp < np; ++lp) {
    const auto& [a, b] = w2.pair(slice.pairs[static_cast<std::size_t>(lp)]);
    if (auto t = u.bracket(a, b)) {
      auto [it, _] = urow.try_emplace(t->index, static_cast<int>(urow.size()));
      trips.emplace_back(it->second, lp, Rat(-t->sign));
    }
  }
  QMatrix d2_local = QMatrix::from_triplets(static_cast<int>(urow.size()), np, trips);

  SliceOutcome out;
  out.rank_d2 = rank(d2_local);
  int ker_dim = np - out.rank_d2;

  // Quotient Ker(d2)/Im(d3) inside the slice: first absorb the image, then
  // count which kernel vectors still grow the span; those are H2 classes.
  RrefBuilder span(np);
  for (const SparseRow& col : slice.d3_columns) span.absorb(col);
  out.rank_d3 = span.rank();
  QMatrix ker = kernel_matrix(d2_local);
  for (int i = 0; i < ker.rows(); ++i) {
    SparseRow row = ker.row(i);
    if (span.absorb(row)) {
      ++out.h2;
      if (want_witnesses) out.witnesses.push_back(std::move(row));
    }
  }
  if (out.h2 != ker_dim - out.rank_d3)
    throw std::logic_error("homology: weight-slice rank bookkeeping broken");
  return out;
}

} // namespace detail

/**
 * H2(u) = Ker(d2)/Im(d3), together with the H1 data and the per-weight
 * breakdown. The boundary maps preserve the torus weight, so the complex
 * splits into independent weight slices; the graded path computes each
 * slice separately (concurrently when threads permit) and the totals are
 * sums over slices. The ungraded path assembles the full matrices instead
 * and is retained as a cross-check oracle.
 */
inline HomologyResult h2(const NilLie& u, const HomologyOptions& options = {}) {
  int n = u.dim();
  HomologyResult res;
  res.dim_u = n;
  res.lambda2 = WedgeBasis2::size_of(n);
  res.lambda3 = WedgeBasis3::size_of(n);
  res.graded = options.graded;

  H1Result h1r = h1(u);
  res.h1_dim = h1r.dim;
  res.h1_weights = h1r.weights;

  if (!options.graded) {
    QMatrix d2 = d2_matrix(u);
    QMatrix d3 = d3_matrix(u);
    res.rank_d2 = rank(d2);
    // Columns of d3 have at most three entries; reducing them as rows is
    // far cheaper than reducing the long rows of d3 itself.
    res.rank_d3 = rank(d3.transpose());
    res.ker_d2_dim = static_cast<int>(res.lambda2) - res.rank_d2;
    res.h2_dim = res.ker_d2_dim - res.rank_d3;
    if (res.h1_dim != n - res.rank_d2)
      throw std::logic_error("homology: H1 disagrees with rank d2");
    return res;
  }

  std::vector<Weight> wt = weight_table(u);
  WedgeBasis2 w2(n);
  WedgeBasis3 w3(n);

  std::map<Weight, detail::WeightSlice> slices;
  std::vector<int> local_of(static_cast<std::size_t>(w2.size()), -1);
  for (int idx = 0; idx < w2.size(); ++idx) {
    const auto& [a, b] = w2.pair(idx);
    auto [it, _] = slices.try_emplace(
        weight_sum(wt[static_cast<std::size_t>(a)], wt[static_cast<std::size_t>(b)]));
    local_of[static_cast<std::size_t>(idx)] = static_cast<int>(it->second.pairs.size());
    it->second.pairs.push_back(idx);
  }
  for (int col = 0; col < w3.size(); ++col) {
    const auto& [a, b, c] = w3.triple(col);
    SparseRow column;
    auto add_term = [&](int partner, const std::optional<BracketTerm>& t) {
      if (!t || t->index == partner) return;
      auto [pair_idx, perm_sign] = w2.oriented(partner, t->index);
      column.emplace_back(local_of[static_cast<std::size_t>(pair_idx)],
                          Rat(t->sign * perm_sign));
    };
    add_term(c, u.bracket(a, b));
    add_term(b, u.bracket(c, a));
    add_term(a, u.bracket(b, c));
    column = normalize_row(std::move(column));
    if (column.empty()) continue;
    // All three terms carry the triple's weight, so the column lives in a
    // single slice and the local indices above are consistent.
    Weight tw = weight_sum(
        weight_sum(wt[static_cast<std::size_t>(a)], wt[static_cast<std::size_t>(b)]),
        wt[static_cast<std::size_t>(c)]);
    slices.at(tw).d3_columns.push_back(std::move(column));
  }

  // Evaluate slices concurrently; outcomes land in per-slice slots, so the
  // merge below is deterministic regardless of scheduling.
  std::vector<const detail::WeightSlice*> order;
  std::vector<const Weight*> keys;
  for (const auto& [w, s] : slices) {
    keys.push_back(&w);
    order.push_back(&s);
  }
  std::vector<detail::SliceOutcome> outcomes(order.size());
  unsigned workers = options.threads ? options.threads
                                     : std::max(1u, std::thread::hardware_concurrency());
  workers = std::min<unsigned>(workers, static_cast<unsigned>(order.size()));
  if (workers <= 1) {
    for (std::size_t i = 0; i < order.size(); ++i)
      outcomes[i] = detail::run_slice(u, w2, *order[i], options.witnesses);
  } else {
    std::vector<std::thread> pool;
    std::exception_ptr failure;
    std::mutex failure_mx;
    for (unsigned t = 0; t < workers; ++t)
      pool.emplace_back([&, t] {
        try {
          for (std::size_t i = t; i < order.size(); i += workers)
            outcomes[i] = detail::run_slice(u, w2, *order[i], options.witnesses);
        } catch (...) {
          std::lock_guard<std::mutex> lock(failure_mx);
          if (!failure) failure = std::current_exception();
        }
      });
    for (auto& th : pool) th.join();
    if (failure) std::rethrow_exception(failure);
  }

  for (const Weight& w : h1r.weights) res.per_weight[w].h1 += 1;
  for (std::size_t i = 0; i < order.size(); ++i) {
    const detail::SliceOutcome& oc = outcomes[i];
    res.rank_d2 += oc.rank_d2;
    res.rank_d3 += oc.rank_d3;
    if (oc.h2 > 0) res.per_weight[*keys[i]].h2 = oc.h2;
    for (int k = 0; k < oc.h2; ++k) res.h2_weights.push_back(*keys[i]);
    if (options.witnesses && !oc.witnesses.empty()) {
      // Map witness coordinates back to global wedge-pair indices.
      std::vector<SparseRow> global;
      for (const SparseRow& wrow : oc.witnesses) {
        SparseRow g;
        for (const auto& [lp, val] : wrow)
          g.emplace_back(order[i]->pairs[static_cast<std::size_t>(lp)], val);
        global.push_back(normalize_row(std::move(g)));
      }
      res.h2_witnesses.emplace(*keys[i], std::move(global));
    }
    res.h2_dim += oc.h2;
  }
  res.ker_d2_dim = static_cast<int>(res.lambda2) - res.rank_d2;
  std::sort(res.h2_weights.begin(), res.h2_weights.end());
  if (res.h1_dim != n - res.rank_d2)
    throw std::logic_error("homology: H1 disagrees with rank d2");
  return res;
}

} // namespace nilhom
