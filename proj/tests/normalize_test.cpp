#include <algorithm>
#include <random>

#include "doctest.h"

#include "addrand/acceptance.hpp"
#include "addrand/normalize.hpp"
#include "addrand/syntax.hpp"

using namespace addrand;

namespace {

PredicateAtom atom(const char* text) { return parse_formula(text).atoms.front(); }

}  // namespace

TEST_CASE("expand_neg_Pk") {
  auto two = expand_neg_Pk(atom("!P_2(x)"));
  REQUIRE(two.size() == 2);
  CHECK(two[0].congruence == CongruenceAtom{1, 0, 2, 1});
  CHECK_FALSE(two[0].retained);
  CHECK(two[1].congruence == CongruenceAtom{1, 0, 2, 0});
  CHECK(two[1].retained == atom("!P_2(x)"));

  auto one = expand_neg_Pk(atom("!P(x)"));
  REQUIRE(one.size() == 1);
  CHECK(one[0].retained == atom("!P(x)"));

  auto three = expand_neg_Pk(atom("!P_3(2x+1)"));
  REQUIRE(three.size() == 3);
  CHECK(three[0].congruence == CongruenceAtom{2, 1, 3, 1});
  CHECK(three[1].congruence == CongruenceAtom{2, 1, 3, 2});
  CHECK(three[2].congruence == CongruenceAtom{2, 1, 3, 0});
  CHECK(three[2].retained);
}

TEST_CASE("P_2(x) splits into 4x and 4x+2") {
  auto bs = normalize_basic(parse_formula("P_2(x)"));
  REQUIRE(bs.size() == 2);
  CHECK(bs[0].substitution() == Term{4, 0});
  CHECK(bs[0].psi == parse_primary("P(2x)"));
  CHECK(bs[1].substitution() == Term{4, 2});
  CHECK(bs[1].psi == parse_primary("P(2x+1)"));
  CHECK(bs[1].trace.n_prime == 2);
  CHECK(bs[1].trace.N == 2);
  CHECK(bs[1].trace.m0 == 1);
  SquareFreeOracle sf;
  CHECK(branch_cover_check(parse_formula("P_2(x)"), bs, 2000, sf).ok());
}

TEST_CASE("primary input gives the identity branch") {
  auto bs = normalize_basic(parse_formula("P(x)"));
  REQUIRE(bs.size() == 1);
  CHECK(bs[0].substitution() == Term{1, 0});
  CHECK(bs[0].psi == parse_primary("P(x)"));
  PrimeOracle pr;
  CHECK(branch_cover_check(parse_formula("P(x)"), bs, 100, pr).ok());
}

TEST_CASE("!P_2(x) has three branches") {
  auto f = parse_formula("!P_2(x)");
  auto bs = normalize_basic(f);
  REQUIRE(bs.size() == 3);
  auto find = [&](Term t) {
    auto it = std::find_if(bs.begin(), bs.end(), [&](const auto& b) { return b.substitution() == t; });
    REQUIRE(it != bs.end());
    return it->psi;
  };
  CHECK(find({2, 1}) == PrimaryFormula{});
  CHECK(find({4, 0}) == parse_primary("!P(2x)"));
  CHECK(find({4, 2}) == parse_primary("!P(2x+1)"));
  SquareFreeOracle sf;
  PrimeOracle pr;
  CHECK(branch_cover_check(f, bs, 2000, sf).ok());
  CHECK(branch_cover_check(f, bs, 2000, pr).ok());
}

TEST_CASE("normalize_basic rejects what it cannot rewrite") {
  CHECK_THROWS_AS(normalize_basic(parse_formula("P(x) & x = 3")), std::invalid_argument);
  CHECK_THROWS_AS(normalize_basic(parse_formula("P(5)")), std::invalid_argument);
  CHECK_THROWS_AS(normalize_basic(parse_formula("!P_6(x) & !P_5(x+1) & !P_4(x+2)"), {10}), BranchCapExceeded);
}

TEST_CASE("contradictory congruences leave no branch") {
  CHECK(normalize_basic(parse_formula("P(x) & x = 0 mod 2 & x = 1 mod 2")).empty());
  CHECK(normalize_basic(parse_formula("P_2(x) & x = 1 mod 2")).empty());
}

TEST_CASE("branches partition the solutions of random formulas") {
  SquareFreeOracle sf;
  PrimeOracle pr;
  GenericOracle gen(3, 0.4);
  for (std::uint64_t seed = 0; seed < 120; ++seed) {
    BasicFormula f = random_basic_formula(7000 + seed);
    auto bs = normalize_basic(f);
    for (const RandomnessOracle* o : {static_cast<const RandomnessOracle*>(&sf),
                                      static_cast<const RandomnessOracle*>(&pr),
                                      static_cast<const RandomnessOracle*>(&gen)}) {
      auto rep = branch_cover_check(f, bs, 1500, *o);
      INFO(render(f), " under ", o->name());
      REQUIRE(rep.ok());
    }
    // Branch images are disjoint residue classes.
    for (std::size_t i = 0; i < bs.size(); ++i)
      for (std::size_t j = i + 1; j < bs.size(); ++j) {
        Int g = gcd(bs[i].subst_coeff, bs[j].subst_coeff);
        bool same_class = floor_mod(bs[i].subst_const - bs[j].subst_const, g) == 0;
        bool same_labels = bs[i].labels == bs[j].labels;
        REQUIRE_FALSE((same_class && same_labels && bs[i].psi == bs[j].psi));
      }
  }
}

TEST_CASE("normalization is deterministic") {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    BasicFormula f = random_basic_formula(seed);
    REQUIRE(normalize_basic(f) == normalize_basic(f));
  }
}

TEST_CASE("divided constants follow from the branch data") {
  auto bs = normalize_basic(parse_formula("P_3(2x+1) & !P_2(x+5) & x = 1 mod 3"));
  REQUIRE_FALSE(bs.empty());
  for (const auto& b : bs) {
    CHECK(b.witness_class.contains(b.subst_const));
    CHECK(b.subst_coeff % b.witness_class.modulus == 0);
    CHECK(b.trace.bezout * b.trace.ell_prime % b.trace.n_prime == 1 % b.trace.n_prime);
  }
}
