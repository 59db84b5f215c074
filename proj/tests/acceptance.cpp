// Acceptance gate: one line per criterion, [PASS]/[FAIL], nonzero exit on
// any failure. Budgets and expected values are pinned here on purpose; a
// regression that slows a computation past its budget is a failure.

#include <algorithm>
#include <array>
#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "nilhom/abelscheck.hpp"
#include "nilhom/boundary.hpp"
#include "nilhom/families.hpp"
#include "nilhom/gamma.hpp"
#include "nilhom/homology.hpp"
#include "nilhom/semidirect.hpp"

using namespace nilhom;

namespace {

int failures = 0;

void run(int num, const std::string& what, double budget_s,
         const std::function<bool(std::string&)>& body) {
  std::string detail;
  auto t0 = std::chrono::steady_clock::now();
  bool ok = false;
  try {
    ok = body(detail);
  } catch (const std::exception& e) {
    detail = std::string("exception: ") + e.what();
  }
  double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  bool in_budget = budget_s <= 0 || dt < budget_s;
  if (!in_budget) detail += (detail.empty() ? "" : "; ") + std::string("over budget");
  bool pass = ok && in_budget;
  if (!pass) ++failures;
  std::printf("[%s] %d: %s (%.2fs", pass ? "PASS" : "FAIL", num, what.c_str(), dt);
  if (budget_s > 0) std::printf(", budget %.0fs", budget_s);
  std::printf(")%s%s\n", detail.empty() ? "" : " -- ", detail.c_str());
  std::fflush(stdout);
}

BlockPattern pattern_of(const std::vector<int>& sizes, bool family_kinds) {
  BlockPattern p;
  p.sizes = sizes;
  for (std::size_t i = 0; i < sizes.size(); ++i)
    p.kinds.push_back(family_kinds && (i == 0 || i + 1 == sizes.size())
                          ? BlockKind::Identity
                          : BlockKind::SL);
  p.validate();
  return p;
}

/// All 2 to 4 block size tuples over {1,2,3,4} with dim u <= 40.
std::vector<std::vector<int>> sweep_tuples() {
  std::vector<std::vector<int>> out;
  for (int blocks = 2; blocks <= 4; ++blocks) {
    std::vector<int> sizes(static_cast<std::size_t>(blocks), 1);
    while (true) {
      BlockPattern probe = pattern_of(sizes, false);
      if (probe.dim_u() <= 40) out.push_back(sizes);
      int i = blocks - 1;
      while (i >= 0 && sizes[static_cast<std::size_t>(i)] == 4) {
        sizes[static_cast<std::size_t>(i)] = 1;
        --i;
      }
      if (i < 0) break;
      ++sizes[static_cast<std::size_t>(i)];
    }
  }
  return out;
}

Weight unit6(int pos, int val) {
  Weight w(6, 0);
  w[static_cast<std::size_t>(pos)] = val;
  return w;
}

bool criterion1(std::string& detail) {
  int checked = 0;
  for (const auto& sizes : sweep_tuples()) {
    NilLie u = build_u(pattern_of(sizes, false));
    if (!d2_matrix(u).multiply(d3_matrix(u)).is_zero()) {
      detail = "nonzero composite on " + u.pattern().describe();
      return false;
    }
    ++checked;
  }
  detail = std::to_string(checked) + " patterns";
  return true;
}

bool criterion2(std::string& detail) {
  // Family bookkeeping behind the pinned dimensions.
  if (123 + 36 + 12 != 171 || 21 + 3 + 3 + 9 + 6 + 6 + 5 != 53) return false;
  NilLie u = build_u(pattern_of({1, 3, 3, 1}, true));
  HomologyResult g = h2(u);
  HomologyOptions uo;
  uo.graded = false;
  HomologyResult o = h2(u, uo); // independent full-matrix ranks
  auto dims = [](const HomologyResult& r) {
    return std::array<long long, 7>{r.dim_u,       r.lambda2, r.lambda3, r.rank_d2,
                                    r.ker_d2_dim, r.rank_d3, r.h2_dim};
  };
  std::array<long long, 7> expect{22, 231, 1540, 7, 224, 53, 171};
  if (g.h1_dim != 15 || o.h1_dim != 15) return false;
  if (dims(g) != expect || dims(o) != expect) {
    // The first five dims and H1 match; the pinned rank d3 / H2 pair comes
    // from a family count the exact computation refutes: the boundary image
    // strictly contains the b-families span (counterexample pinned in the
    // unit tests, three independent rank backends agree).
    detail = "rank d3 = " + std::to_string(g.rank_d3) + " (pinned 53), H2 = " +
             std::to_string(g.h2_dim) +
             " (pinned 171); graded and ungraded oracle agree on the computed values";
    return false;
  }
  return true;
}

bool criterion3(std::string& detail) {
  bool ok = true;
  for (const auto& sizes : {std::vector<int>{1, 3, 3, 1}, std::vector<int>{2, 3, 3, 2}}) {
    NilLie u = build_u(pattern_of(sizes, true));
    StructureReport rep = verify_structure(u);
    if (!rep.families_span_kernel || !rep.b_h_direct || !rep.b_plus_h_is_kernel) {
      detail = "span or direct-sum claim fails on " + u.pattern().describe();
      return false;
    }
    if (!rep.image_equals_b) {
      // Families do span the kernel and b (+) h = Ker d2 holds, but the
      // image claim is refuted: Im d3 strictly contains b (the four mixed
      // cells of family (1) are boundaries; see the unit tests).
      if (!detail.empty()) detail += "; ";
      detail += "Im d3 = span(b) fails on " + u.pattern().describe() + ": dim " +
                std::to_string(rep.dim_image) + " vs " + std::to_string(rep.dim_b) +
                " (span and direct-sum claims hold)";
      ok = false;
    }
  }
  return ok;
}

bool criterion4(std::string& detail) {
  BlockPattern pat = pattern_of({1, 3, 3, 1}, true);
  NilLie u = build_u(pat);
  H1Result h = h1(u);
  std::vector<Weight> expect;
  for (int j = 0; j < 3; ++j) expect.push_back(unit6(j, -1));
  for (int j = 0; j < 3; ++j)
    for (int k = 0; k < 3; ++k) {
      Weight w = unit6(j, 1);
      w[static_cast<std::size_t>(3 + k)] = -1;
      expect.push_back(w);
    }
  for (int k = 0; k < 3; ++k) expect.push_back(unit6(3 + k, 1));
  std::sort(expect.begin(), expect.end());
  if (h.weights != expect) {
    detail = "H1 weight multiset mismatch";
    return false;
  }
  HomologyResult res = h2(u);
  WeightLattice lat = WeightLattice::for_pattern(pat);
  for (const Weight& w : res.h2_weights)
    if (is_zero_mod_P(w, lat)) {
      detail = "H2 weight in P";
      return false;
    }
  return true;
}

bool criterion5(std::string& detail) {
  auto verdict_of = [](const BlockPattern& p) { return check(p).verdict; };
  for (const auto& sizes : {std::vector<int>{1, 3, 3, 1}, std::vector<int>{1, 3, 4, 1},
                            std::vector<int>{2, 3, 3, 2}})
    if (verdict_of(pattern_of(sizes, true)) != Verdict::Certified) {
      detail = "expected Certified";
      return false;
    }

  ConditionReport c2 = check(pattern_of({1, 2, 2, 1}, true));
  if (c2.verdict != Verdict::NotEstablished || c2.cond_ii) {
    detail = "(1,2,2,1) must fail condition ii";
    return false;
  }

  BlockPattern p131;
  p131.sizes = {1, 3, 1};
  p131.kinds = {BlockKind::Identity, BlockKind::SL, BlockKind::Identity};
  ConditionReport c3 = check(p131);
  bool witness_ok = c3.cond_iii_witness &&
                    c3.cond_iii_witness->first == Weight{-1, 0, 0} &&
                    c3.cond_iii_witness->second == Weight{1, 0, 0};
  if (c3.verdict != Verdict::NotEstablished || c3.cond_iii || !witness_ok) {
    detail = "(1,3,1) must fail condition iii on antipodal weights";
    return false;
  }

  for (const auto& sizes : {std::vector<int>{2, 2}, std::vector<int>{2, 2, 2},
                            std::vector<int>{1, 1, 1, 1}, std::vector<int>{3, 2, 4}}) {
    BlockPattern p;
    p.sizes = sizes;
    p.kinds.assign(sizes.size(), BlockKind::Identity);
    if (check(p).verdict != Verdict::NotEstablished) {
      detail = "all-identity pattern must not certify";
      return false;
    }
  }
  return true;
}

bool criterion6(std::string& detail) {
  int checked = 0;
  for (const auto& sizes : sweep_tuples()) {
    // Ranks do not depend on the kind assignment, so one ungraded
    // computation serves every kind choice for the tuple.
    NilLie u = build_u(pattern_of(sizes, false));
    HomologyOptions uo;
    uo.graded = false;
    HomologyResult o = h2(u, uo);

    std::vector<BlockPattern> kind_choices{pattern_of(sizes, false)};
    if (sizes.size() == 4) kind_choices.push_back(pattern_of(sizes, true));
    for (const BlockPattern& p : kind_choices) {
      NilLie v = build_u(p);
      HomologyResult g = h2(v);
      int h1_sum = 0, h2_sum = 0;
      for (const auto& [w, d] : g.per_weight) {
        h1_sum += d.h1;
        h2_sum += d.h2;
      }
      if (h1_sum != o.h1_dim || h2_sum != o.h2_dim || g.rank_d2 != o.rank_d2 ||
          g.rank_d3 != o.rank_d3 || g.ker_d2_dim != o.ker_d2_dim) {
        detail = "graded/ungraded mismatch on " + p.describe();
        return false;
      }
      ++checked;
    }
  }
  detail = std::to_string(checked) + " graded runs";
  return true;
}

bool criterion7(std::string& detail) {
  BlockPattern pat = pattern_of({1, 3, 3, 1}, true);
  for (long long pv : {2, 3}) {
    Int p(pv);
    NonHopfReport rep = verify_nonhopf(pat, p, 1000, 1);
    if (!rep.ok() || rep.kernel_size != p || rep.kernel_size_expected != p) {
      detail = "non-Hopf verification failed at p = " + p.str();
      return false;
    }
  }
  return true;
}

bool criterion8(std::string& detail) {
  ZMatrix id2 = ZMatrix::identity(2);
  ZMatrix shear = ZMatrix::from_rows({{Int(1), Int(1)}, {Int(0), Int(1)}});
  ZMatrix swap = ZMatrix::from_rows({{Int(0), Int(1)}, {Int(1), Int(0)}});

  bool ok = is_inner(id2, 3, 2).has_value() && !is_inner(id2.neg(), 3, 2).has_value() &&
            !is_inner(shear, 3, 2).has_value() && !is_inner(swap, 3, 2).has_value() &&
            is_inner(id2, 4, 2).has_value() && is_inner(id2.neg(), 4, 2).has_value() &&
            !is_inner(shear, 4, 2).has_value() && !is_inner(swap, 4, 2).has_value();
  if (!ok) {
    detail = "inner witness set is wrong";
    return false;
  }
  auto w = is_inner(id2.neg(), 4, 2);
  if (w->epsilon != Int(-1)) {
    detail = "wrong witness sign";
    return false;
  }
  return true;
}

bool criterion9(std::string& detail) {
  struct Case {
    long long k, n, m, index;
  };
  for (const Case& c : {Case{2, 3, 1, 8}, Case{3, 3, 2, 729}, Case{2, 3, 3, 512}}) {
    CohopfReport rep = cohopf_embed(Int(c.k), static_cast<int>(c.n),
                                    static_cast<int>(c.m), 200, 1);
    if (!rep.ok() || rep.index != Int(c.index) || !rep.enumerated ||
        rep.enumerated_count != Int(c.index)) {
      detail = "index verification failed at k = " + std::to_string(c.k);
      return false;
    }
  }
  return true;
}

} // namespace

int main() {
  run(1, "boundary maps compose to zero across the size sweep", 30, criterion1);
  run(2, "reference pattern (1,3,3,1) dimensions", 10, criterion2);
  run(3, "kernel family structure on (1,3,3,1) and (2,3,3,2)", 60, criterion3);
  run(4, "H1 weight multiset and H2 weights off the trivial character", 0, criterion4);
  run(5, "certification verdicts", 0, criterion5);
  run(6, "graded and ungraded homology agree across the size sweep", 0, criterion6);
  run(7, "non-Hopf witness on (1,3,3,1) for p in {2,3}", 30, criterion7);
  run(8, "inner witnesses exactly at signed identities", 0, criterion8);
  run(9, "self-embedding index k^(n m)", 0, criterion9);
  if (failures) std::printf("%d criterion(s) failed\n", failures);
  return failures;
}
