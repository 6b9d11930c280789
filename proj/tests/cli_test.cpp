#include <sstream>

#include "doctest.h"
#include "json.hpp"

#include "addrand/cli.hpp"

using namespace addrand;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = cli::main_with_args(args, out, err);
  return {code, out.str(), err.str()};
}

nlohmann::json json_of(const Run& r) { return nlohmann::json::parse(r.out); }

}  // namespace

TEST_CASE("decide P(x) & P(x+1) under primes") {
  auto r = run({"decide", "--predicate", "primes", "--formula", "P(x) & P(x+1)", "--output", "json"});
  CHECK(r.code == 0);
  auto j = json_of(r);
  CHECK(j["verdict"] == "Finite");
  CHECK(j["solutions"] == nlohmann::json::array({-3, 2}));
  CHECK(j["witness_k"] == 2);
}

TEST_CASE("normalize P_2(x)") {
  auto r = run({"normalize", "--formula", "P_2(x)", "--output", "json"});
  CHECK(r.code == 0);
  auto j = json_of(r);
  REQUIRE(j["branches"].size() == 2);
  CHECK(j["branches"][0]["substitution"] == "4x");
  CHECK(j["branches"][1]["substitution"] == "4x+2");
  auto text = run({"normalize", "--formula", "P_2(x)"});
  CHECK(text.code == 0);
  CHECK(text.out.find("t(x) = 4x+2") != std::string::npos);
}

TEST_CASE("decide P(x) & !P(x)") {
  auto r = run({"decide", "--formula", "P(x) & !P(x)", "--output", "json"});
  CHECK(r.code == 0);
  CHECK(json_of(r)["verdict"] == "Inconsistent");
}

TEST_CASE("usage and parse errors exit 1") {
  CHECK(run({}).code == 1);
  CHECK(run({"decide"}).code == 1);
  CHECK(run({"decide", "--formula", "P(x"}).code == 1);
  CHECK(run({"decide", "--formula", "P(x)", "--predicate", "evens"}).code == 1);
  CHECK(run({"decide", "--formula", "P(x)", "--output", "xml"}).code == 1);
  CHECK(run({"verify", "--formula", "P(x)", "--bounds", "100,10"}).code == 1);
  CHECK(run({"decide", "--formula", "P(x)", "--predicate", "generic", "--density", "3/2"}).code == 1);
  auto mixed = run({"decide", "--formula", "Pr(x) & SF(x+1)"});
  CHECK(mixed.code == 1);
  CHECK(mixed.err.find("mixed") != std::string::npos);
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("resource caps exit 3") {
  CHECK(run({"decide", "--formula", "!P_6(x) & !P_5(x+1)", "--branch-cap", "3"}).code == 3);
}

TEST_CASE("verify reports") {
  auto twin = run({"verify", "--predicate", "primes", "--formula", "P(x) & P(x+2)", "--bounds", "1e4,1e5,1e6",
                   "--output", "json"});
  CHECK(twin.code == 0);
  auto j = json_of(twin);
  CHECK(j["status"] == "confirmed");
  CHECK(j["counts"].size() == 3);
  CHECK_FALSE(j.contains("elapsed_ms"));
  auto timed = run({"verify", "--formula", "P(4x)", "--bounds", "1e4", "--output", "json", "--timing"});
  CHECK(timed.code == 0);
  CHECK(json_of(timed).contains("elapsed_ms"));
}

TEST_CASE("json output is byte-identical across runs and worker counts") {
  for (const char* cmd : {"decide", "verify", "normalize", "chi"}) {
    std::vector<std::string> base{cmd, "--formula", "P(2x+1) & !P(x+3)", "--bounds", "5e4", "--output", "json"};
    auto a = run(base);
    auto w1 = base, w8 = base;
    w1.insert(w1.end(), {"--workers", "1"});
    w8.insert(w8.end(), {"--workers", "8"});
    CHECK(a.code == 0);
    CHECK(a.out == run(base).out);
    CHECK(a.out == run(w1).out);
    CHECK(a.out == run(w8).out);
  }
}

TEST_CASE("chi, axioms and mixed") {
  auto chi = run({"chi", "--predicate", "squarefree", "--formula", "P(4x)", "--output", "json"});
  CHECK(chi.code == 0);
  auto j = json_of(chi);
  CHECK(j["boundary"]["elements"] == nlohmann::json::array({4, 9, 25}));
  CHECK(j["chi"] == false);
  CHECK(j["witness_k"] == 4);

  auto ax = run({"axioms", "--predicate", "generic", "--seed", "7", "--samples", "50", "--output", "json"});
  CHECK(ax.code == 0);
  CHECK(json_of(ax)["p2"]["tested"] == 0);

  auto mixed = run({"mixed", "--formula", "SF(x) & !SF(x)", "--bounds", "100", "--output", "json"});
  CHECK(mixed.code == 0);
  CHECK(json_of(mixed)["counts"][0]["count"] == 0);
}

TEST_CASE("selftest with a sabotaged crt exits 2") {
  auto r = run({"selftest", "--quick", "--inject-fault", "crt"});
  CHECK(r.code == 2);
  CHECK(r.out.find("[FAIL] 6.") != std::string::npos);
}

TEST_CASE("bound and density parsing") {
  CHECK(cli::parse_bound("1e6") == 1'000'000);
  CHECK(cli::parse_bound("2.5e5") == 250'000);
  CHECK(cli::parse_bound("12345") == 12345);
  CHECK_THROWS(cli::parse_bound("1.5"));
  CHECK_THROWS(cli::parse_bound("1e"));
  CHECK(cli::parse_density("1/4") == doctest::Approx(0.25));
  CHECK(cli::parse_density("0.3") == doctest::Approx(0.3));
  CHECK_THROWS(cli::parse_density("0"));
}
