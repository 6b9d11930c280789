#include <random>

#include "doctest.h"

#include "addrand/decide.hpp"
#include "addrand/syntax.hpp"
#include "addrand/verify.hpp"

using namespace addrand;

namespace {

std::vector<Int> scan_solutions(const BasicFormula& f, const RandomnessOracle& o, Int bound) {
  std::vector<Int> out;
  for (Int x = -bound; x <= bound; ++x)
    if (holds(o, f, x)) out.push_back(x);
  return out;
}

}  // namespace

TEST_CASE("classify_primary examples") {
  PrimeOracle pr;
  SquareFreeOracle sf;
  auto c = classify_primary(parse_primary("P(x) & P(x+1)"), pr);
  CHECK(c.verdict == Verdict::Finite);
  CHECK(c.witness_k == 2);
  CHECK(c.solutions == std::vector<Int>{-3, 2});
  CHECK(scan_solutions(parse_formula("P(x) & P(x+1)"), pr, 10000) == c.solutions);

  auto four = classify_primary(parse_primary("P(4x)"), sf);
  CHECK(four.verdict == Verdict::Finite);
  CHECK(four.witness_k == 4);
  CHECK(four.solutions.empty());

  CHECK(classify_primary(parse_primary("P(x) & !P(x)"), pr).verdict == Verdict::Inconsistent);

  auto twin = classify_primary(parse_primary("P(x) & P(x+2)"), pr);
  CHECK(twin.verdict == Verdict::Infinite);
  CHECK(twin.conditionality == Conditionality::DicksonConditional);
  CHECK(twin.chi == std::vector<bool>{true});
}

TEST_CASE("classify_conjunction") {
  PrimeOracle pr;
  SquareFreeOracle sf;
  std::vector<PrimaryFormula> clash{parse_primary("P(x)"), parse_primary("!P(x)")};
  auto a = classify_conjunction(clash, pr);
  CHECK(a.verdict == Verdict::Inconsistent);
  CHECK(a.compatible == false);

  std::vector<PrimaryFormula> twin{parse_primary("P(x)"), parse_primary("P(x+2)")};
  auto b = classify_conjunction(twin, pr);
  CHECK(b.verdict == Verdict::Infinite);
  CHECK(b.conditionality == Conditionality::DicksonConditional);
  auto merged = classify_primary(parse_primary("P(x) & P(x+2)"), pr);
  merged.compatible = true;
  CHECK(b == merged);

  std::vector<PrimaryFormula> same{parse_primary("P(x)"), parse_primary("P(x)")};
  auto c = classify_conjunction(same, sf);
  CHECK(c.verdict == Verdict::Infinite);
  CHECK(c.conditionality == Conditionality::Unconditional);
}

TEST_CASE("decide_exists_basic examples") {
  PrimeOracle pr;
  SquareFreeOracle sf;
  auto p2 = decide_exists_basic(parse_formula("P_2(x)"), sf);
  CHECK(p2.verdict == Verdict::Infinite);
  CHECK(p2.conditionality == Conditionality::Unconditional);
  CHECK(p2.branches == 2);
  CHECK(p2.chi == std::vector<bool>{true, true});
  for (Int b : {2, 6, 10}) CHECK(holds(sf, parse_formula("P_2(x)"), b));

  auto mod4 = decide_exists_basic(parse_formula("P(x) & x = 0 mod 4"), pr);
  CHECK(mod4.verdict == Verdict::Finite);
  CHECK(mod4.solutions.empty());
  CHECK(scan_solutions(parse_formula("P(x) & x = 0 mod 4"), pr, 100000).empty());

  auto one = decide_exists_basic(parse_formula("P(x)"), pr);
  CHECK(one.verdict == Verdict::Infinite);
  CHECK(one.conditionality == Conditionality::DicksonConditional);
}

TEST_CASE("equalities pin x") {
  PrimeOracle pr;
  auto three = decide_exists_basic(parse_formula("P(x) & 2x = 6"), pr);
  CHECK(three.verdict == Verdict::Finite);
  CHECK(three.solutions == std::vector<Int>{3});
  CHECK(decide_exists_basic(parse_formula("P(x) & 2x = 5"), pr).verdict == Verdict::Inconsistent);
  auto four = decide_exists_basic(parse_formula("P(x) & x = 4"), pr);
  CHECK(four.verdict == Verdict::Finite);
  CHECK(four.solutions.empty());
  CHECK(decide_exists_basic(parse_formula("x = 1 & x = 2"), pr).verdict == Verdict::Inconsistent);

  auto r = resolve_equalities(parse_formula("P(x) & x = 5 & 3x = 15"), pr);
  auto* pin = std::get_if<PinnedSolutions>(&r);
  REQUIRE(pin);
  CHECK(pin->solvable);
  CHECK(pin->solutions == std::vector<Int>{5});
  CHECK(std::holds_alternative<BasicFormula>(resolve_equalities(parse_formula("P(x)"), pr)));
}

TEST_CASE("constant atoms are folded") {
  PrimeOracle pr;
  CHECK(decide_exists_basic(parse_formula("P(4) & P(x)"), pr).verdict == Verdict::Inconsistent);
  CHECK(decide_exists_basic(parse_formula("P(5) & P(x)"), pr).verdict == Verdict::Infinite);
  CHECK(decide_exists_basic(parse_formula("!P(5)"), pr).verdict == Verdict::Inconsistent);
  CHECK(decide_exists_basic(parse_formula("true"), pr).verdict == Verdict::Infinite);
}

TEST_CASE("square-free negatives tied to a positive term") {
  SquareFreeOracle sf;
  auto c = classify_primary(parse_primary("P(5x-15) & !P(x-3)"), sf);
  CHECK(c.verdict == Verdict::Finite);
  CHECK(c.solutions.empty());
  CHECK(c.negative_obstruction);
  CHECK(c.chi == std::vector<bool>{true});

  // x square-free and 4x not: fine, since 4 supplies the square.
  CHECK(classify_primary(parse_primary("P(x) & !P(4x)"), sf).verdict == Verdict::Infinite);
  // 6x picks up 9 whenever 3 | x.
  CHECK(classify_primary(parse_primary("P(2x) & !P(6x)"), sf).verdict == Verdict::Infinite);
  CHECK(classify_primary(parse_primary("P(2x+2) & !P(x+1) & !P(x+5)"), sf).verdict == Verdict::Finite);
  CHECK(classify_primary(parse_primary("P(2x+2) & !P(x+5)"), sf).verdict == Verdict::Infinite);

  // Zeros of the negative term survive.
  auto z = classify_primary(parse_primary("P(3x+1) & !P(x)"), sf);
  CHECK(z.verdict == Verdict::Infinite);
}

TEST_CASE("verdicts match window scans on random primary instances") {
  SquareFreeOracle sf;
  PrimeOracle pr;
  std::mt19937_64 rng(21);
  std::uniform_int_distribution<int> rd(0, 3), rpd(0, 2);
  std::uniform_int_distribution<Int> cd(1, 4), zd(-12, 12);
  int tested = 0;
  while (tested < 300) {
    PrimaryFormula f;
    for (int i = rd(rng); i > 0; --i) f.positive.push_back({cd(rng), zd(rng)});
    for (int i = rpd(rng); i > 0; --i) f.negative.push_back({cd(rng), zd(rng)});
    if (!is_good_position(deduplicated(f))) continue;
    ++tested;
    for (const RandomnessOracle* o : {static_cast<const RandomnessOracle*>(&sf),
                                      static_cast<const RandomnessOracle*>(&pr)}) {
      auto c = classify_primary(f, *o);
      auto sols = scan_solutions(to_basic(f), *o, 3000);
      INFO(render(f), " under ", o->name());
      if (c.verdict == Verdict::Finite) {
        std::vector<Int> inside;
        for (Int s : c.solutions)
          if (std::abs(s) <= 3000) inside.push_back(s);
        REQUIRE(inside == sols);
      } else {
        REQUIRE(c.verdict == Verdict::Infinite);
        REQUIRE(sols.size() > 2);
      }
    }
  }
}

TEST_CASE("adding atoms never enlarges a finite solution set") {
  PrimeOracle pr;
  auto base = decide_exists_basic(parse_formula("P(x) & P(x+1)"), pr);
  REQUIRE(base.verdict == Verdict::Finite);
  auto more = decide_exists_basic(parse_formula("P(x) & P(x+1) & !P(x+3)"), pr);
  REQUIRE(more.verdict == Verdict::Finite);
  CHECK(more.solutions == std::vector<Int>{-3});
  for (Int s : more.solutions)
    CHECK(std::find(base.solutions.begin(), base.solutions.end(), s) != base.solutions.end());
}
