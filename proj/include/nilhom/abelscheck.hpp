#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "nilhom/homology.hpp"
#include "nilhom/weights.hpp"

namespace nilhom {

enum class Verdict { Certified, NotEstablished };

/**
 * The four sufficient conditions for compact presentability checked on a
 * block pattern, with witnesses for every failure:
 *
 *   (i)   the group is split — true by construction for block patterns;
 *   (ii)  no simple factor of rank one: no SL block of size exactly 2
 *         (size-1 SL blocks are trivial and impose nothing);
 *   (iii) 0 is not on the segment joining any two H1 weights, modulo P,
 *         all unordered pairs including equal ones;
 *   (iv)  strong form: 0 is not a weight of H2 modulo P at all.
 *
 * A NotEstablished verdict never asserts a negative result: the criterion
 * is sufficient only, and (iv) is checked in the strong form, so a pattern
 * failing (iv) here might still satisfy the weaker dominant-weight version.
 */
struct ConditionReport {
  bool cond_i = true; // holds by construction
  bool cond_ii = false;
  std::vector<int> cond_ii_offending_blocks; // indices of size-2 SL blocks
  bool cond_iii = false;
  std::optional<std::pair<Weight, Weight>> cond_iii_witness;
  bool cond_iv = false;
  std::optional<Weight> cond_iv_witness;
  std::string cond_iv_note;
  Verdict verdict = Verdict::NotEstablished;
  std::vector<std::string> failed; // names of failed conditions
  HomologyResult homology;
};

inline ConditionReport check(const BlockPattern& pattern,
                             const HomologyOptions& options = {}) {
  pattern.validate();
  ConditionReport rep;
  NilLie u = build_u(pattern);
  WeightLattice lat = WeightLattice::for_pattern(pattern);
  // Conditions (iii)/(iv) read weight data, so the graded path is required
  // regardless of the caller's preference.
  HomologyOptions opts = options;
  opts.graded = true;
  rep.homology = h2(u, opts);

  rep.cond_ii = true;
  for (std::size_t b = 0; b < pattern.sizes.size(); ++b)
    if (pattern.kinds[b] == BlockKind::SL && pattern.sizes[b] == 2) {
      rep.cond_ii = false;
      rep.cond_ii_offending_blocks.push_back(static_cast<int>(b));
    }

  // Distinct weight values suffice; multiplicity does not affect the tests.
  std::vector<Weight> h1w = rep.homology.h1_weights;
  h1w.erase(std::unique(h1w.begin(), h1w.end()), h1w.end());
  rep.cond_iii = true;
  for (std::size_t i = 0; i < h1w.size() && rep.cond_iii; ++i)
    for (std::size_t j = i; j < h1w.size(); ++j)
      if (segment_contains_zero(h1w[i], h1w[j], lat)) {
        rep.cond_iii = false;
        rep.cond_iii_witness = {h1w[i], h1w[j]};
        break;
      }

  std::vector<Weight> h2w = rep.homology.h2_weights;
  h2w.erase(std::unique(h2w.begin(), h2w.end()), h2w.end());
  rep.cond_iv = true;
  for (const Weight& w : h2w)
    if (is_zero_mod_P(w, lat)) {
      rep.cond_iv = false;
      rep.cond_iv_witness = w;
      rep.cond_iv_note = "strong form failed: 0 is an H2 weight mod P; "
                         "full dominant-weight form not evaluated";
      break;
    }

  if (!rep.cond_ii) rep.failed.push_back("ii");
  if (!rep.cond_iii) rep.failed.push_back("iii");
  if (!rep.cond_iv) rep.failed.push_back("iv");
  rep.verdict = rep.failed.empty() ? Verdict::Certified : Verdict::NotEstablished;
  return rep;
}

} // namespace nilhom
