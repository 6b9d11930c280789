#include <random>

#include "doctest.h"

#include "addrand/formula.hpp"
#include "addrand/oracle.hpp"
#include "addrand/syntax.hpp"

using namespace addrand;

TEST_CASE("parse examples") {
  auto twin = parse_formula("P(x) & P(x+2)");
  CHECK(twin.congruences.empty());
  CHECK(twin.atoms == std::vector<PredicateAtom>{{{1, 0}, 1, true}, {{1, 2}, 1, true}});

  CHECK(parse_formula("P(-x+3)").atoms == std::vector<PredicateAtom>{{{1, -3}, 1, true}});

  auto f = parse_formula("P_2(3x+1) & x = 1 mod 4");
  CHECK(f.congruences == std::vector<CongruenceAtom>{{1, 0, 4, 1}});
  CHECK(f.atoms == std::vector<PredicateAtom>{{{3, 1}, 2, true}});

  auto e = parse_formula("P(x) & 2x = 6");
  CHECK(e.equalities == std::vector<EqualityAtom>{{2, 0, 6}});
  CHECK(parse_formula("true") == BasicFormula{});
  CHECK(parse_formula("x = -1 mod 4").congruences.front().residue == 3);
}

TEST_CASE("parse errors") {
  CHECK_THROWS_AS(parse_formula("P(x"), ParseError);
  CHECK_THROWS_AS(parse_formula("P_0(x)"), ParseError);
  CHECK_THROWS_AS(parse_formula("x = 1 mod 0"), ParseError);
  CHECK_THROWS_AS(parse_formula("P(y)"), ParseError);
  CHECK_THROWS_AS(parse_formula("Pr(x)"), MixedPredicateError);
  CHECK_THROWS_AS(parse_primary("P_2(x)"), ParseError);
  CHECK_THROWS_AS(parse_primary("P(x) & x = 1 mod 2"), ParseError);
}

TEST_CASE("render examples") {
  CHECK(render(PrimaryFormula{{{1, 0}}, {}}) == "P(x)");
  CHECK(render(BasicFormula{{{1, 0, 4, 1}}, {}, {{{3, 1}, 2, true}}}) == "P_2(3x+1) & x = 1 mod 4");
  CHECK(render(PrimaryFormula{{{2, 1}}, {{2, 3}}}) == "P(2x+1) & !P(2x+3)");
  CHECK(render(Term{-1, 0}) == "-x");
  CHECK(render(Term{0, 7}) == "7");
}

TEST_CASE("render then parse is the identity") {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<Int> c(1, 9), z(-40, 40), k(1, 5), n(1, 12);
  for (int i = 0; i < 500; ++i) {
    BasicFormula f;
    for (int j = 0; j < 3; ++j) f.atoms.push_back({{c(rng), z(rng)}, k(rng), rng() % 2 == 0});
    Int m = n(rng);
    f.congruences.push_back({c(rng), z(rng), m, floor_mod(z(rng), m)});
    REQUIRE(parse_formula(render(f)) == f);
  }
}

TEST_CASE("unify_coefficients") {
  auto f = parse_formula("P(2x+1) & P(3x+1)");
  auto u = unify_coefficients(f);
  CHECK(u.atoms == std::vector<PredicateAtom>{{{6, 3}, 3, true}, {{6, 2}, 2, true}});
  SquareFreeOracle sf;
  for (Int x = -1000; x <= 1000; ++x) REQUIRE(holds(sf, f, x) == holds(sf, u, x));

  CHECK(unify_coefficients(parse_formula("P(x) & P(x+2)")) == parse_formula("P(x) & P(x+2)"));
  CHECK(unify_coefficients(parse_formula("P_2(2x)")) == parse_formula("P_2(2x)"));
}

TEST_CASE("canonicalization preserves membership") {
  PrimeOracle pr;
  SquareFreeOracle sf;
  std::mt19937_64 rng(4);
  std::uniform_int_distribution<Int> c(-6, 6), z(-50, 50), k(1, 4);
  for (int i = 0; i < 200; ++i) {
    PredicateAtom raw{{c(rng), z(rng)}, k(rng), rng() % 2 == 0};
    PredicateAtom canon{canonical(raw.term), raw.index, raw.positive};
    REQUIRE(canon.term.coeff >= 0);
    for (Int x = -300; x <= 300; ++x) {
      REQUIRE(holds(pr, raw, x) == holds(pr, canon, x));
      REQUIRE(holds(sf, raw, x) == holds(sf, canon, x));
    }
  }
  auto f = parse_formula("P(-3x+7)");
  for (Int x = -500; x <= 500; ++x) REQUIRE(holds(sf, f, x) == sf.contains(-3 * x + 7));
}

TEST_CASE("good position") {
  CHECK_FALSE(is_good_position({{{1, 0}}, {{1, 0}}}));
  CHECK(is_good_position({{{1, 0}, {1, 2}}, {{1, 1}}}));
  CHECK(is_good_position({{{2, 1}}, {{2, 3}}}));
}

TEST_CASE("compatibility") {
  std::vector<PrimaryFormula> a{{{{1, 0}}, {}}, {{}, {{1, 0}}}};
  CHECK_FALSE(are_compatible(a));
  std::vector<PrimaryFormula> b{{{{1, 0}}, {}}, {{{1, 2}}, {}}};
  CHECK(are_compatible(b));
  std::vector<PrimaryFormula> c{{{{1, 0}}, {{1, 1}}}, {{{1, 0}}, {{1, 3}}}};
  CHECK(are_compatible(c));
  CHECK(conjoin(c) == PrimaryFormula{{{1, 0}}, {{1, 1}, {1, 3}}});
}

TEST_CASE("good position is order and duplicate invariant") {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<Int> c(1, 3), z(-3, 3);
  for (int i = 0; i < 500; ++i) {
    PrimaryFormula f;
    for (int j = 0; j < 3; ++j) f.positive.push_back({c(rng), z(rng)});
    for (int j = 0; j < 2; ++j) f.negative.push_back({c(rng), z(rng)});
    PrimaryFormula g{{f.positive.rbegin(), f.positive.rend()}, {f.negative.rbegin(), f.negative.rend()}};
    g.positive.push_back(f.positive.front());
    REQUIRE(is_good_position(f) == is_good_position(g));
    REQUIRE(is_good_position(f) == is_good_position(deduplicated(f)));
  }
}
