#include <random>

#include "doctest.h"

#include "addrand/oracle.hpp"
#include "addrand/primes.hpp"
#include "addrand/syntax.hpp"
#include "addrand/verify.hpp"

using namespace addrand;

namespace {

bool slow_prime(Int n) {
  n = n < 0 ? -n : n;
  if (n < 2) return false;
  for (Int d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

bool slow_square_free(Int n) {
  n = n < 0 ? -n : n;
  if (n == 0) return false;
  for (Int d = 2; d * d <= n; ++d)
    if (n % (d * d) == 0) return false;
  return true;
}

Instance inst(const char* text) { return Instance::from(parse_primary(text)); }

// chi straight from the displayed conjunctions, with the limits recomputed here.
bool literal_chi(const RandomnessOracle& o, const Instance& in) {
  if (o.kind() == OracleKind::Generic || in.positive.empty()) return true;
  Int r = static_cast<Int>(in.positive.size());
  Int limit = r;
  if (o.kind() == OracleKind::Primes) {
    for (const auto& t : in.positive) limit = std::max(limit, t.coeff);
    limit += 1;
  } else {
    Int prod = 1;
    for (const auto& t : in.positive) prod *= t.coeff;
    limit = std::max(prod, r) + 1;
  }
  for (Int p = 2; o.kind() == OracleKind::Primes ? p < limit : p <= limit; ++p) {
    if (!slow_prime(p)) continue;
    Int k = o.kind() == OracleKind::Primes ? p : p * p;
    bool some = false;
    for (Int s = 0; s < k && !some; ++s)
      some = std::all_of(in.positive.begin(), in.positive.end(),
                         [&](const Term& t) { return floor_mod(t.coeff * s + t.constant, k) != 0; });
    if (!some) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("membership examples") {
  PrimeOracle pr;
  SquareFreeOracle sf;
  CHECK(pr.contains(-3));
  CHECK_FALSE(sf.contains(12));
  CHECK(sf.contains(10));
  CHECK_FALSE(pr.contains(0));
  CHECK_FALSE(sf.contains(0));
  CHECK_FALSE(GenericOracle(1).contains(0));
  CHECK_THROWS(GenericOracle(1, 1.0));
  CHECK_THROWS(make_oracle("evens"));
}

TEST_CASE("membership matches trial division") {
  PrimeOracle pr;
  SquareFreeOracle sf;
  for (Int n = -20000; n <= 20000; ++n) {
    REQUIRE(pr.contains(n) == slow_prime(n));
    REQUIRE(sf.contains(n) == slow_square_free(n));
  }
  std::mt19937_64 rng(1);
  std::uniform_int_distribution<Int> big(1'000'000'000'000LL, 1'000'000'100'000LL);
  for (int i = 0; i < 200; ++i) {
    Int n = big(rng);
    REQUIRE(pr.contains(n) == slow_prime(n));
    REQUIRE(sf.contains(n) == slow_square_free(n));
  }
  CHECK(pr.contains(9'223'372'036'854'775'783LL));
  CHECK(prime_factors(600851475143LL) == std::vector<Int>{71, 839, 1471, 6857});
}

TEST_CASE("generic oracle is seeded, symmetric and about as dense as asked") {
  GenericOracle a(9, 0.3), b(9, 0.3), c(10, 0.3);
  std::size_t hits = 0, differ = 0;
  for (Int n = 1; n <= 100000; ++n) {
    REQUIRE(a.contains(n) == a.contains(-n));
    REQUIRE(a.contains(n) == b.contains(n));
    hits += a.contains(n);
    differ += a.contains(n) != c.contains(n);
  }
  CHECK(hits > 29000);
  CHECK(hits < 31000);
  CHECK(differ > 10000);
}

TEST_CASE("build_chi examples") {
  PrimeOracle pr;
  SquareFreeOracle sf;
  GenericOracle gen;
  auto twin = build_chi(pr, inst("P(x) & P(x+2)"));
  CHECK(twin.boundary.elements() == std::vector<Int>{2});
  REQUIRE(twin.clauses.size() == 1);
  CHECK(twin.clauses[0].modulus == 2);
  CHECK(twin.clauses[0].coeffs == std::vector<Int>{1, 1});
  auto four = build_chi(sf, inst("P(4x)"));
  CHECK(four.boundary.elements() == std::vector<Int>{4, 9, 25});
  CHECK(four.clauses.size() == 3);
  auto g = build_chi(gen, inst("P(x) & P(x+2) & !P(x+1)"));
  CHECK(g.boundary.empty());
  CHECK(g.trivially_true());
  CHECK(build_chi(pr, Instance{{}, {{1, 0}}}).boundary.empty());
  CHECK(build_chi(pr, inst("P(x)")).boundary.empty());
}

TEST_CASE("chi_holds examples") {
  PrimeOracle pr;
  SquareFreeOracle sf;
  CHECK(chi_holds(pr, inst("P(x) & P(x+2)")));
  CHECK_FALSE(chi_holds(pr, inst("P(x) & P(x+1)")));
  CHECK_FALSE(chi_holds(sf, inst("P(4x)")));
  CHECK_THROWS_AS(chi_holds(pr, Instance{{{1, 0}}, {{1, 0}}}), std::invalid_argument);
}

TEST_CASE("failing_boundary_witness examples") {
  PrimeOracle pr;
  SquareFreeOracle sf;
  CHECK(failing_boundary_witness(pr, inst("P(x) & P(x+1)")) == 2);
  CHECK(failing_boundary_witness(sf, inst("P(4x)")) == 4);
  CHECK(failing_boundary_witness(sf, inst("P(2x) & P(2x+2)")) == 4);
  CHECK_THROWS_AS(failing_boundary_witness(sf, inst("P(9x+3)")), std::logic_error);
}

TEST_CASE("trapped sets") {
  PrimeOracle pr;
  SquareFreeOracle sf;
  CHECK(pr.boundary_trapped_set(2) == std::vector<Int>{-2, 2});
  CHECK(pr.boundary_trapped_set(5) == std::vector<Int>{-5, 5});
  CHECK(sf.boundary_trapped_set(4).empty());
  CHECK_THROWS(pr.boundary_trapped_set(4));
  CHECK_THROWS(sf.boundary_trapped_set(8));
}

TEST_CASE("chi agrees with the displayed conjunctions and the witness covers every residue") {
  PrimeOracle pr;
  SquareFreeOracle sf;
  std::mt19937_64 rng(8);
  std::uniform_int_distribution<int> rd(1, 3);
  std::uniform_int_distribution<Int> cd(1, 5), zd(-30, 30);
  std::size_t tested = 0;
  while (tested < 1000) {
    Instance in;
    int r = rd(rng);
    for (int i = 0; i < r; ++i) in.positive.push_back({cd(rng), zd(rng)});
    if (rng() % 2) in.negative.push_back({cd(rng), zd(rng)});
    if (!is_good_position({in.positive, in.negative})) continue;
    ++tested;
    for (const RandomnessOracle* o : {static_cast<const RandomnessOracle*>(&pr),
                                      static_cast<const RandomnessOracle*>(&sf)}) {
      bool expected = literal_chi(*o, in);
      REQUIRE(chi_holds(*o, in) == expected);
      std::vector<Int> z;
      for (const auto& t : in.positive) z.push_back(t.constant);
      REQUIRE(build_chi(*o, in).evaluate(z) == expected);
      if (expected) continue;
      Int k = failing_boundary_witness(*o, in);
      for (Int s = 0; s < k; ++s)
        REQUIRE(std::any_of(in.positive.begin(), in.positive.end(),
                            [&](const Term& t) { return floor_mod(t.coeff * s + t.constant, k) == 0; }));
    }
  }
}

TEST_CASE("elided chi keeps the clauses that can fail") {
  SquareFreeOracle sf;
  // The coefficient product pushes B far past the materialization limit.
  Instance big{{{30, 1}, {30, 3}, {30, 5}, {30, 7}, {30, 11}, {30, 13}}, {}};
  auto chi = build_chi(sf, big);
  CHECK(chi.tautologies_elided);
  std::vector<Int> z{1, 3, 5, 7, 11, 13};
  CHECK(chi.evaluate(z));
  CHECK(chi_holds(sf, big));
  std::vector<Int> even{2, 4, 6, 8, 10, 12};
  CHECK_FALSE(chi.evaluate(even));
  for (const auto& c : chi.clauses) CHECK((c.prime <= 6 || 30 % c.prime == 0));

  // 49x + 49 vanishes mod 49 for every x.
  Instance fails{{{49, 49}, {30, 1}, {30, 7}, {30, 11}, {30, 13}}, {}};
  CHECK(build_chi(sf, fails).tautologies_elided);
  CHECK_FALSE(chi_holds(sf, fails));
  CHECK(failing_boundary_witness(sf, fails) == 49);
}

TEST_CASE("square-free chi ignores negative terms") {
  // 5(x-3) square-free forces x-3 square-free, yet chi only sees 5x-15.
  SquareFreeOracle sf;
  auto in = inst("P(5x-15) & !P(x-3)");
  CHECK(chi_holds(sf, in));
  CHECK(count_solutions(parse_primary("P(5x-15) & !P(x-3)"), sf, 100000).count == 0);
}
