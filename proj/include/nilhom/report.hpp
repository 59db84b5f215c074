#pragma once

#include <string>

#include <json.hpp>

#include "nilhom/abelscheck.hpp"
#include "nilhom/gamma.hpp"
#include "nilhom/homology.hpp"
#include "nilhom/nil_lie.hpp"
#include "nilhom/semidirect.hpp"
#include "nilhom/spec_file.hpp"
#include "nilhom/version.hpp"
#include "nilhom/weights.hpp"

namespace nilhom {

using Json = nlohmann::json;

/**
 * Canonical machine-readable reports. nlohmann::json objects keep their
 * keys sorted, weight lists are emitted in lexicographic order, and big
 * integers are serialized as decimal strings, so equal inputs produce
 * byte-identical documents.
 */

inline Json json_weight(const Weight& w, const WeightLattice& lat) {
  Json coords = Json::array();
  for (int c : w) coords.push_back(c);
  return Json{{"coords", coords}, {"mod_P_zero", is_zero_mod_P(w, lat)}};
}

inline Json json_zmatrix(const ZMatrix& m) {
  Json rows = Json::array();
  for (int i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back(m.at(i, j).convert_to<long long>());
    rows.push_back(row);
  }
  return rows;
}

inline Json json_input(const SpecFile& spec) {
  Json j;
  j["blocks"] = spec.blocks;
  j["kinds"] = spec.kinds;
  j["prime"] = spec.prime ? Json(spec.prime->str()) : Json(nullptr);
  return j;
}

inline Json report_envelope(const std::string& command, Json input, Json payload,
                            const std::string& verdict) {
  Json j;
  j["version"] = kVersion;
  j["command"] = command;
  j["input"] = std::move(input);
  j["payload"] = std::move(payload);
  j["verdict"] = verdict;
  return j;
}

inline Json report_homology(const SpecFile& spec, const HomologyResult& res,
                            const WeightLattice& lat) {
  Json p;
  p["dim_u"] = res.dim_u;
  p["lambda2"] = res.lambda2;
  p["lambda3"] = res.lambda3;
  p["rank_d2"] = res.rank_d2;
  p["rank_d3"] = res.rank_d3;
  p["ker_d2_dim"] = res.ker_d2_dim;
  p["h1_dim"] = res.h1_dim;
  p["h2_dim"] = res.h2_dim;
  p["graded"] = res.graded;
  if (res.graded) {
    Json table = Json::array();
    for (const auto& [w, dims] : res.per_weight) {
      Json row;
      row["weight"] = json_weight(w, lat);
      row["h1"] = dims.h1;
      row["h2"] = dims.h2;
      table.push_back(std::move(row));
    }
    p["per_weight"] = std::move(table);
  }
  return report_envelope("homology", json_input(spec), std::move(p), "computed");
}

inline Json report_weights(const SpecFile& spec, const NilLie& u) {
  WeightLattice lat = WeightLattice::for_pattern(u.pattern());
  Json entries = Json::array();
  for (int i = 0; i < u.dim(); ++i) {
    const UBasisVector& v = u.basis_vector(i);
    Json e;
    e["index"] = i;
    e["block_i"] = v.i_block;
    e["block_j"] = v.j_block;
    e["row"] = v.row;
    e["col"] = v.col;
    e["weight"] = json_weight(weight_of(v, lat), lat);
    entries.push_back(std::move(e));
  }
  Json p;
  p["dim_u"] = u.dim();
  p["lattice_dim"] = lat.d();
  p["entries"] = std::move(entries);
  return report_envelope("weights", json_input(spec), std::move(p), "computed");
}

inline Json report_check(const SpecFile& spec, const ConditionReport& rep,
                         const WeightLattice& lat) {
  Json conds;
  conds["i"] = Json{{"status", "HoldsByConstruction"}};
  conds["ii"] = Json{{"pass", rep.cond_ii},
                     {"offending_blocks", rep.cond_ii_offending_blocks}};
  Json iii;
  iii["pass"] = rep.cond_iii;
  iii["witness"] = rep.cond_iii_witness
                       ? Json{{"w1", json_weight(rep.cond_iii_witness->first, lat)},
                              {"w2", json_weight(rep.cond_iii_witness->second, lat)}}
                       : Json(nullptr);
  conds["iii"] = std::move(iii);
  Json iv;
  iv["pass"] = rep.cond_iv;
  iv["witness"] = rep.cond_iv_witness ? json_weight(*rep.cond_iv_witness, lat) : Json(nullptr);
  iv["note"] = rep.cond_iv_note;
  conds["iv"] = std::move(iv);

  Json p;
  p["conditions"] = std::move(conds);
  p["failed"] = rep.failed;
  p["h1_dim"] = rep.homology.h1_dim;
  p["h2_dim"] = rep.homology.h2_dim;
  bool ok = rep.verdict == Verdict::Certified;
  return report_envelope("check", json_input(spec), std::move(p),
                         ok ? "certified" : "not_established");
}

inline Json report_nonhopf(const SpecFile& spec, const NonHopfReport& rep) {
  Json p;
  p["p"] = rep.p.str();
  p["kernel_size"] = rep.kernel_size.str();
  p["kernel_size_expected"] = rep.kernel_size_expected.str();
  p["alpha_homomorphism_ok"] = rep.alpha_homomorphism_ok;
  p["alpha_roundtrip_ok"] = rep.alpha_roundtrip_ok;
  p["alpha_preserves_invariants"] = rep.alpha_preserves_invariants;
  p["alpha_z_is_p_z"] = rep.alpha_z_is_p_z;
  p["alpha_z_proper"] = rep.alpha_z_proper;
  p["kernel_has_nonidentity"] = rep.kernel_has_nonidentity;
  p["kernel_maps_to_identity"] = rep.kernel_maps_to_identity;
  p["endo_well_defined"] = rep.endo_well_defined;
  p["surjectivity_ok"] = rep.surjectivity_ok;
  p["samples"] = rep.samples;
  return report_envelope("nonhopf", json_input(spec), std::move(p),
                         rep.ok() ? "verified" : "not_verified");
}

inline Json report_outer(int n, int m, const ZMatrix& g,
                         const std::optional<InnerWitness>& witness) {
  Json p;
  p["n"] = n;
  p["m"] = m;
  p["g"] = json_zmatrix(g);
  p["inner"] = witness.has_value();
  p["witness"] = witness ? Json{{"epsilon", witness->epsilon.convert_to<long long>()},
                                {"s0", json_zmatrix(witness->s0)},
                                {"m0", json_zmatrix(witness->m0)}}
                         : Json(nullptr);
  Json input;
  input["n"] = n;
  input["m"] = m;
  input["g"] = json_zmatrix(g);
  // The command verifies that phi_g is outer; an inner witness refutes it.
  return report_envelope("outer", std::move(input), std::move(p),
                         witness ? "not_verified" : "verified");
}

inline Json report_cohopf(const CohopfReport& rep) {
  Json p;
  p["k"] = rep.k.str();
  p["n"] = rep.n;
  p["m"] = rep.m;
  p["index"] = rep.index.str();
  p["enumerated"] = rep.enumerated;
  p["enumerated_count"] = rep.enumerated_count.str();
  p["homomorphism_ok"] = rep.homomorphism_ok;
  p["injectivity_ok"] = rep.injectivity_ok;
  p["coset_criterion_ok"] = rep.coset_criterion_ok;
  p["samples"] = rep.samples;
  Json input;
  input["k"] = rep.k.str();
  input["n"] = rep.n;
  input["m"] = rep.m;
  return report_envelope("cohopf", std::move(input), std::move(p),
                         rep.ok() ? "verified" : "not_verified");
}

} // namespace nilhom
