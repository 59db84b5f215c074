#pragma once

#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "nilhom/report.hpp"

namespace nilhom {

namespace detail {

inline SpecFile load_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open spec file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_spec(ss.str());
}

inline Int parse_prime_flag(const std::string& text) {
  for (char c : text)
    if (c < '0' || c > '9')
      throw std::runtime_error("--prime: '" + text + "' is not a positive integer");
  Int p(text);
  if (!is_prime(p)) throw std::runtime_error("--prime: " + text + " is not prime");
  return p;
}

inline ZMatrix parse_g_flag(const std::string& text, int m) {
  std::vector<Int> entries;
  std::string tok;
  std::stringstream ss(text);
  while (std::getline(ss, tok, ',')) {
    try {
      std::size_t used = 0;
      long long v = std::stoll(tok, &used);
      if (used != tok.size()) throw std::invalid_argument("");
      entries.emplace_back(v);
    } catch (...) {
      throw std::runtime_error("--g: '" + tok + "' is not an integer");
    }
  }
  if (static_cast<int>(entries.size()) != m * m)
    throw std::runtime_error("--g: expected " + std::to_string(m * m) +
                             " comma-separated entries (row-major m x m)");
  ZMatrix g(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) g.at(i, j) = entries[static_cast<std::size_t>(i * m + j)];
  return g;
}

} // namespace detail

/**
 * Command driver. Canonical JSON report on `out`, human summary on `err`.
 * Exit codes: 0 the command's claim is certified/verified (or the
 * computation simply succeeded), 1 the claim could not be established,
 * 2 malformed input.
 */
inline int run_main(const std::vector<std::string>& args, std::ostream& out,
                    std::ostream& err) {
  CLI::App app{"Torus-graded Lie algebra homology and arithmetic-group witnesses "
               "for block patterns"};
  app.require_subcommand(1);

  std::string specfile;
  std::string prime_flag;
  bool ungraded = false;
  std::uint64_t seed = 1;
  int n_flag = 0, m_flag = 0;
  std::string g_flag;
  long long k_flag = 0;

  CLI::App* cmd_homology = app.add_subcommand(
      "homology", "H1 and H2 of the nilpotent algebra of a block pattern");
  cmd_homology->add_option("specfile", specfile, "group-spec file")->required();
  cmd_homology->add_option("--prime", prime_flag, "override the spec file's prime");
  cmd_homology->add_flag("--ungraded", ungraded,
                         "skip the weight grading (full-matrix cross-check path)");

  CLI::App* cmd_weights =
      app.add_subcommand("weights", "torus weight of every basis vector of u");
  cmd_weights->add_option("specfile", specfile, "group-spec file")->required();
  cmd_weights->add_option("--prime", prime_flag, "override the spec file's prime");

  CLI::App* cmd_check = app.add_subcommand(
      "check", "certify the compact-presentability criterion for a block pattern");
  cmd_check->add_option("specfile", specfile, "group-spec file")->required();
  cmd_check->add_option("--prime", prime_flag, "override the spec file's prime");

  CLI::App* cmd_nonhopf = app.add_subcommand(
      "nonhopf", "verify the non-Hopfian quotient witness for a block pattern");
  cmd_nonhopf->add_option("specfile", specfile, "group-spec file")->required();
  cmd_nonhopf->add_option("--prime", prime_flag, "override the spec file's prime");
  cmd_nonhopf->add_option("--seed", seed, "seed for the randomized checks");

  CLI::App* cmd_outer = app.add_subcommand(
      "outer", "decide whether right multiplication by g is an outer automorphism");
  cmd_outer->add_option("--n", n_flag, "SL block size n (n >= 3)")->required();
  cmd_outer->add_option("--m", m_flag, "abelian part width m")->required();
  cmd_outer->add_option("--g", g_flag, "row-major m*m integer entries, comma-separated")
      ->required();

  CLI::App* cmd_cohopf = app.add_subcommand(
      "cohopf", "verify the finite-index self-embedding (s, A) -> (s, k A)");
  cmd_cohopf->add_option("--k", k_flag, "scale factor k >= 1")->required();
  cmd_cohopf->add_option("--n", n_flag, "SL block size n")->required();
  cmd_cohopf->add_option("--m", m_flag, "abelian part width m")->required();
  cmd_cohopf->add_option("--seed", seed, "seed for the randomized checks");

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const std::string& s : args) argv.push_back(s.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (cmd_homology->parsed() || cmd_weights->parsed() || cmd_check->parsed() ||
        cmd_nonhopf->parsed()) {
      SpecFile spec = detail::load_spec(specfile);
      if (!prime_flag.empty()) spec.prime = detail::parse_prime_flag(prime_flag);
      BlockPattern pat = spec.to_pattern();

      if (cmd_weights->parsed()) {
        NilLie u = build_u(pat);
        out << report_weights(spec, u).dump(2) << "\n";
        err << "dim u = " << u.dim() << ", weight lattice rank "
            << WeightLattice::for_pattern(pat).d() << "\n";
        return 0;
      }
      if (cmd_homology->parsed()) {
        NilLie u = build_u(pat);
        HomologyOptions o;
        o.graded = !ungraded;
        HomologyResult res = h2(u, o);
        out << report_homology(spec, res, WeightLattice::for_pattern(pat)).dump(2) << "\n";
        err << "H1 dim " << res.h1_dim << ", H2 dim " << res.h2_dim
            << (res.graded ? " (graded)" : " (ungraded)") << "\n";
        return 0;
      }
      if (cmd_check->parsed()) {
        ConditionReport rep = check(pat);
        out << report_check(spec, rep, WeightLattice::for_pattern(pat)).dump(2) << "\n";
        if (rep.verdict == Verdict::Certified) {
          err << "verdict: Certified\n";
          return 0;
        }
        err << "verdict: NotEstablished (failed:";
        for (const std::string& f : rep.failed) err << " " << f;
        err << ")\n";
        return 1;
      }
      // nonhopf
      if (!spec.prime) {
        err << "error: nonhopf needs a prime (spec file `prime =` line or --prime)\n";
        return 2;
      }
      NonHopfReport rep = verify_nonhopf(pat, *spec.prime, 1000, seed);
      out << report_nonhopf(spec, rep).dump(2) << "\n";
      err << "kernel size " << rep.kernel_size.str() << " (expected "
          << rep.kernel_size_expected.str() << "), "
          << (rep.ok() ? "all checks passed" : "CHECKS FAILED") << "\n";
      return rep.ok() ? 0 : 1;
    }

    if (cmd_outer->parsed()) {
      ZMatrix g = detail::parse_g_flag(g_flag, m_flag);
      std::optional<InnerWitness> w = is_inner(g, n_flag, m_flag);
      out << report_outer(n_flag, m_flag, g, w).dump(2) << "\n";
      if (w) {
        err << "inner: conjugation by (epsilon I, 0) with epsilon = "
            << w->epsilon.str() << "\n";
        return 1;
      }
      err << "outer: no inner witness exists\n";
      return 0;
    }

    // cohopf
    if (k_flag < 1) {
      err << "error: --k must be >= 1\n";
      return 2;
    }
    CohopfReport rep = cohopf_embed(Int(k_flag), n_flag, m_flag, 200, seed);
    out << report_cohopf(rep).dump(2) << "\n";
    err << "index " << rep.index.str()
        << (rep.enumerated ? " (enumerated)" : " (closed form)") << ", "
        << (rep.ok() ? "all checks passed" : "CHECKS FAILED") << "\n";
    return rep.ok() ? 0 : 1;
  } catch (const SpecParseError& e) {
    err << "spec error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
}

} // namespace nilhom
