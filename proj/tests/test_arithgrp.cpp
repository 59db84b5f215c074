#include <catch2/catch_amalgamated.hpp>

#include <vector>

#include "nilhom/gamma.hpp"
#include "nilhom/plocal.hpp"
#include "nilhom/semidirect.hpp"
#include "nilhom/zmatrix.hpp"
#include "support.hpp"

using namespace nilhom;
using support::make_pattern;

TEST_CASE("p-local numbers normalize and round trip") {
  Int p(2);
  REQUIRE(plocal_normalize(Int(12), 2, p) == (PLocal{Int(3), 0}));
  REQUIRE(plocal_normalize(Int(12), 3, p) == (PLocal{Int(3), 1}));
  REQUIRE(plocal_normalize(Int(0), 5, p) == (PLocal{Int(0), 0}));
  PLocal a = plocal_normalize(Int(7), 2, p); // 7/4
  REQUIRE(plocal_to_rat(a, p) == Rat(7, 4));
  REQUIRE(plocal_from_rat(Rat(7, 4), p) == a);
  REQUIRE_THROWS_AS(plocal_from_rat(Rat(1, 3), p), std::domain_error);
  REQUIRE(plocal_is_zero(plocal_sub(a, a, p)));
  REQUIRE(plocal_to_rat(plocal_add(a, a, p), p) == Rat(7, 2));
  REQUIRE(plocal_to_rat(plocal_mul(a, a, p), p) == Rat(49, 16));
  REQUIRE(plocal_to_rat(plocal_neg(a), p) == Rat(-7, 4));
  REQUIRE(plocal_div_p(plocal_times_p(a, p), p) == a);
  REQUIRE(plocal_times_p(plocal_from_int(3), p) == plocal_from_int(6));
  REQUIRE(plocal_is_integer(plocal_from_int(6)));
  REQUIRE_FALSE(plocal_is_integer(a));
}

TEST_CASE("p-local floor and fractional part") {
  Int p(3);
  PLocal x = plocal_from_rat(Rat(14, 9), p); // 1 + 5/9
  REQUIRE(plocal_floor(x, p) == Int(1));
  REQUIRE(plocal_to_rat(plocal_fract(x, p), p) == Rat(5, 9));
  PLocal neg = plocal_from_rat(Rat(-1, 3), p);
  REQUIRE(plocal_floor(neg, p) == Int(-1));
  REQUIRE(plocal_to_rat(plocal_fract(neg, p), p) == Rat(2, 3));
  REQUIRE(plocal_is_zero(plocal_fract(plocal_from_int(4), p)));
}

TEST_CASE("integer matrix determinant and unimodular inverse") {
  ZMatrix a = ZMatrix::from_rows({{Int(2), Int(3)}, {Int(1), Int(2)}});
  REQUIRE(a.det() == Int(1));
  REQUIRE(a.is_unimodular());
  ZMatrix inv = a.inverse_unimodular();
  REQUIRE(a.mul(inv) == ZMatrix::identity(2));
  ZMatrix b = ZMatrix::from_rows({{Int(2), Int(0)}, {Int(0), Int(2)}});
  REQUIRE(b.det() == Int(4));
  REQUIRE_FALSE(b.is_unimodular());
  REQUIRE_THROWS_AS(b.inverse_unimodular(), std::logic_error);
  ZMatrix swap = ZMatrix::from_rows({{Int(0), Int(1)}, {Int(1), Int(0)}});
  REQUIRE(swap.det() == Int(-1));
  REQUIRE(swap.is_unimodular());
  ZMatrix m3 = ZMatrix::from_rows(
      {{Int(1), Int(2), Int(3)}, {Int(0), Int(1), Int(4)}, {Int(5), Int(6), Int(0)}});
  REQUIRE(m3.det() == Int(1));
}

TEST_CASE("group elements validate their shape") {
  BlockPattern pat = make_pattern({1, 3, 3, 1}, "issi", 2);
  Int p(2);
  GammaElement id = GammaElement::identity(pat, p);
  REQUIRE(id.mul(id) == id);
  GammaBuilder bad(pat, p);
  bad.block_entry(1, 1, 0, 0) = plocal_from_int(2); // breaks det 1
  REQUIRE_THROWS_AS(bad.finish(), std::invalid_argument);
  GammaBuilder low(pat, p);
  low.block_entry(2, 1, 0, 0) = plocal_from_int(1); // below the diagonal
  REQUIRE_THROWS_AS(low.finish(), std::invalid_argument);
}

TEST_CASE("group multiplication and inversion are consistent") {
  BlockPattern pat = make_pattern({1, 3, 3, 1}, "issi", 2);
  Int p(2);
  GammaElement id = GammaElement::identity(pat, p);
  for (std::uint64_t s = 0; s < 10; ++s) {
    GammaElement g = random_element(pat, p, 100 + s, 8);
    GammaElement h = random_element(pat, p, 200 + s, 8);
    GammaElement k = random_element(pat, p, 300 + s, 8);
    REQUIRE(g.mul(g.inverse()) == id);
    REQUIRE(g.inverse().mul(g) == id);
    REQUIRE(g.mul(h).mul(k) == g.mul(h.mul(k)));
    REQUIRE(g.mul(h).inverse() == h.inverse().mul(g.inverse()));
  }
}

TEST_CASE("the rescaling endomorphism multiplies the top row blocks by p") {
  BlockPattern pat = make_pattern({1, 3, 3, 1}, "issi", 3);
  Int p(3);
  GammaElement g = random_element(pat, p, 42, 8);
  GammaElement a = alpha(g);
  for (int i = 0; i < g.n(); ++i)
    for (int j = 0; j < g.n(); ++j) {
      Rat expect = plocal_to_rat(g.at(i, j), p);
      if (i < 1 && j >= 1) expect *= 3;
      REQUIRE(plocal_to_rat(a.at(i, j), p) == expect);
    }
  REQUIRE(alpha_inv(a) == g);
  GammaElement h = random_element(pat, p, 43, 8);
  REQUIRE(alpha(g.mul(h)) == alpha(g).mul(alpha(h)));
}

TEST_CASE("kernel cosets count p to the corner size") {
  BlockPattern pat = make_pattern({1, 3, 3, 1}, "issi", 2);
  std::vector<Coset> k2 = kernel_elements(pat, Int(2));
  REQUIRE(k2.size() == 2);
  std::vector<Coset> k3 = kernel_elements(pat, Int(3));
  REQUIRE(k3.size() == 3);
  BlockPattern wide = make_pattern({2, 2, 2}, "isi", 2);
  REQUIRE(kernel_elements(wide, Int(2)).size() == 16); // 2^(2*2)
  // Every kernel coset dies under the induced map; at least one is not trivial.
  bool nontrivial = false;
  for (const Coset& c : k3) {
    REQUIRE(induced_endo(c).is_identity());
    if (!c.is_identity()) nontrivial = true;
  }
  REQUIRE(nontrivial);
}

TEST_CASE("coset reduction is idempotent and sound") {
  BlockPattern pat = make_pattern({1, 3, 3, 1}, "issi", 2);
  Int p(2);
  GammaElement g = random_element(pat, p, 7, 10);
  Coset c = coset_reduce(g);
  REQUIRE(coset_reduce(c.rep) == c);
  // The reduction only moves the corner block by integers.
  int last_off = pat.offset(3);
  for (int i = 0; i < g.n(); ++i)
    for (int j = 0; j < g.n(); ++j) {
      Rat diff = plocal_to_rat(g.at(i, j), p) - plocal_to_rat(c.rep.at(i, j), p);
      if (i < 1 && j >= last_off)
        REQUIRE(is_integer(diff));
      else
        REQUIRE(diff == 0);
    }
}

TEST_CASE("non Hopf verification passes on the family pattern") {
  BlockPattern pat = make_pattern({1, 3, 3, 1}, "issi", 2);
  NonHopfReport rep = verify_nonhopf(pat, Int(2), 60, 11);
  REQUIRE(rep.kernel_size == Int(2));
  REQUIRE(rep.kernel_size_expected == Int(2));
  REQUIRE(rep.alpha_homomorphism_ok);
  REQUIRE(rep.alpha_roundtrip_ok);
  REQUIRE(rep.alpha_preserves_invariants);
  REQUIRE(rep.alpha_z_is_p_z);
  REQUIRE(rep.alpha_z_proper);
  REQUIRE(rep.kernel_has_nonidentity);
  REQUIRE(rep.kernel_maps_to_identity);
  REQUIRE(rep.endo_well_defined);
  REQUIRE(rep.surjectivity_ok);
  REQUIRE(rep.samples == 60);
  REQUIRE(rep.ok());
}

TEST_CASE("non Hopf machinery requires identity corner blocks") {
  BlockPattern pat = make_pattern({2, 2, 2}, "sss", 2);
  REQUIRE_THROWS_AS(verify_nonhopf(pat, Int(2), 5, 1), std::invalid_argument);
}

TEST_CASE("semidirect group law") {
  for (std::uint64_t s = 0; s < 8; ++s) {
    SDElement x = sd_random(3, 2, 500 + s);
    SDElement y = sd_random(3, 2, 600 + s);
    SDElement z = sd_random(3, 2, 700 + s);
    REQUIRE(sd_mul(sd_mul(x, y), z) == sd_mul(x, sd_mul(y, z)));
    REQUIRE(sd_mul(x, sd_inverse(x)) == sd_identity(3, 2));
    REQUIRE(sd_mul(sd_inverse(x), x) == sd_identity(3, 2));
  }
}

TEST_CASE("right translation twists are automorphisms") {
  ZMatrix g = ZMatrix::from_rows({{Int(1), Int(1)}, {Int(0), Int(1)}});
  for (std::uint64_t s = 0; s < 6; ++s) {
    SDElement x = sd_random(3, 2, 800 + s);
    SDElement y = sd_random(3, 2, 900 + s);
    REQUIRE(phi_g(sd_mul(x, y), g) == sd_mul(phi_g(x, g), phi_g(y, g)));
  }
  ZMatrix bad = ZMatrix::from_rows({{Int(2), Int(0)}, {Int(0), Int(2)}});
  REQUIRE_THROWS_AS(phi_g(sd_identity(3, 2), bad), std::invalid_argument);
}

TEST_CASE("inner witnesses exist exactly for signed identities") {
  ZMatrix id2 = ZMatrix::identity(2);
  ZMatrix mid2 = id2.neg();
  ZMatrix shear = ZMatrix::from_rows({{Int(1), Int(1)}, {Int(0), Int(1)}});
  ZMatrix swap = ZMatrix::from_rows({{Int(0), Int(1)}, {Int(1), Int(0)}});

  auto w = is_inner(id2, 3, 2);
  REQUIRE(w.has_value());
  REQUIRE(w->epsilon == Int(1));
  REQUIRE(w->s0 == ZMatrix::identity(3));
  REQUIRE(w->m0.is_zero());

  REQUIRE_FALSE(is_inner(mid2, 3, 2).has_value()); // -1 needs even n
  REQUIRE_FALSE(is_inner(shear, 3, 2).has_value());
  REQUIRE_FALSE(is_inner(swap, 3, 2).has_value());

  auto w4 = is_inner(mid2, 4, 2);
  REQUIRE(w4.has_value());
  REQUIRE(w4->epsilon == Int(-1));
  REQUIRE(is_inner(id2, 4, 2).has_value());
  REQUIRE_FALSE(is_inner(shear, 4, 2).has_value());
  REQUIRE_FALSE(is_inner(swap, 4, 2).has_value());

  REQUIRE_THROWS_AS(is_inner(id2, 2, 2), std::invalid_argument);
  ZMatrix nonuni = ZMatrix::from_rows({{Int(2), Int(0)}, {Int(0), Int(1)}});
  REQUIRE_THROWS_AS(is_inner(nonuni, 3, 2), std::invalid_argument);
}

TEST_CASE("scaling embeddings have the expected index") {
  CohopfReport r1 = cohopf_embed(Int(2), 3, 1, 80, 5);
  REQUIRE(r1.index == Int(8));
  REQUIRE(r1.enumerated);
  REQUIRE(r1.enumerated_count == Int(8));
  REQUIRE(r1.ok());

  CohopfReport r2 = cohopf_embed(Int(3), 3, 2, 80, 5);
  REQUIRE(r2.index == Int(729));
  REQUIRE(r2.enumerated);
  REQUIRE(r2.ok());

  CohopfReport trivial = cohopf_embed(Int(1), 3, 2, 40, 5);
  REQUIRE(trivial.index == Int(1));
  REQUIRE(trivial.ok());

  CohopfReport big = cohopf_embed(Int(10), 3, 7, 40, 5);
  REQUIRE(big.index == Int("1000000000000000000000"));
  REQUIRE_FALSE(big.enumerated);
  REQUIRE(big.ok());

  REQUIRE_THROWS_AS(cohopf_embed(Int(0), 3, 1), std::invalid_argument);
}
