#include "addrand/cli.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>

#include "CLI11.hpp"

#include "addrand/acceptance.hpp"
#include "addrand/decide.hpp"
#include "addrand/errors.hpp"
#include "addrand/normalize.hpp"
#include "addrand/oracle.hpp"
#include "addrand/report.hpp"
#include "addrand/syntax.hpp"
#include "addrand/verify.hpp"

namespace addrand::cli {

namespace {

template <class T>
T parse_number(std::string_view s, const char* what) {
  T v{};
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || p != s.data() + s.size()) throw std::invalid_argument(std::string("bad ") + what + ": " + std::string(s));
  return v;
}

ScanOptions scan_options(const CommandConfig& c) {
  ScanOptions o;
  o.workers = c.workers;
  o.max_sieve = c.max_sieve;
  return o;
}

void emit(std::ostream& out, const Json& j) { out << j.dump(2) << '\n'; }

int normalize_cmd(const CommandConfig& c, std::ostream& out) {
  BasicFormula f = parse_formula(c.formula);
  auto branches = normalize_basic(f, {c.branch_cap});
  if (c.json) {
    Json list = Json::array();
    for (const auto& b : branches) list.push_back(to_json(b));
    emit(out, {{"formula", render(f)}, {"branches", list}});
  } else {
    out << "formula: " << render(f) << '\n';
    print_text(out, branches);
  }
  return Ok;
}

int decide_cmd(const CommandConfig& c, const RandomnessOracle& o, std::ostream& out) {
  BasicFormula f = parse_formula(c.formula);
  Classification r = decide_exists_basic(f, o, {c.branch_cap});
  if (c.json) emit(out, to_json(r));
  else print_text(out, r);
  return Ok;
}

int verify_cmd(const CommandConfig& c, const RandomnessOracle& o, std::ostream& out) {
  BasicFormula f = parse_formula(c.formula);
  auto r = audit(f, o, c.bounds, scan_options(c), {c.branch_cap});
  if (c.json) emit(out, to_json(r, c.timing));
  else print_text(out, r, c.timing);
  return r.status == AuditStatus::Refuted ? Refuted : Ok;
}

int chi_cmd(const CommandConfig& c, const RandomnessOracle& o, std::ostream& out) {
  PrimaryFormula f = parse_primary(c.formula);
  Json j = chi_report(o, f);
  if (c.json) {
    emit(out, j);
    return Ok;
  }
  for (const auto& [key, value] : j.items())
    if (key != "clauses") out << key << ": " << value.dump() << '\n';
  for (const auto& cl : j["clauses"]) out << "  clause " << cl.dump() << '\n';
  return Ok;
}

int axioms_cmd(const CommandConfig& c, const RandomnessOracle& o, std::ostream& out) {
  auto r = check_axioms(o, c.samples, c.bounds.back(), c.seed, scan_options(c));
  if (c.json) emit(out, to_json(r));
  else print_text(out, r);
  return r.status == AuditStatus::Refuted ? Refuted : Ok;
}

int mixed_cmd(const CommandConfig& c, std::ostream& out) {
  MixedConjunction f = parse_mixed(c.formula);
  auto r = count_mixed(f, c.bounds, scan_options(c));
  Json counts = Json::array();
  for (std::size_t i = 0; i < r.bounds.size(); ++i) counts.push_back({{"bound", r.bounds[i]}, {"count", r.counts[i]}});
  if (c.json) {
    emit(out, {{"formula", render(f)}, {"counts", counts}, {"solutions", r.solutions}, {"classification", nullptr}});
  } else {
    out << "formula: " << render(f) << "\n(empirical counts only, no classification)\n";
    for (std::size_t i = 0; i < r.bounds.size(); ++i)
      out << "  |x| <= " << r.bounds[i] << ": " << r.counts[i] << '\n';
  }
  return Ok;
}

int selftest_cmd(const CommandConfig& c, std::ostream& out) {
  AcceptanceConfig a;
  a.workers = c.workers;
  a.quick = c.quick;
  if (c.inject_fault == "crt") {
    a.crt = [](std::span<const CongruenceClass> cs) -> std::optional<CongruenceClass> {
      auto r = addrand::crt(cs);
      if (r && r->modulus > 1) return CongruenceClass(r->modulus, r->residue + 1);
      return r;
    };
  }
  auto results = run_acceptance(a, c.json ? nullptr : &out);
  bool ok = std::all_of(results.begin(), results.end(), [](const CriterionResult& r) { return r.passed; });
  if (c.json) {
    Json list = Json::array();
    for (const auto& r : results)
      list.push_back({{"id", r.id}, {"title", r.title}, {"passed", r.passed}, {"detail", r.detail}});
    emit(out, {{"passed", ok}, {"criteria", list}});
  } else {
    out << (ok ? "all criteria passed" : "FAILED") << '\n';
  }
  return ok ? Ok : Refuted;
}

}  // namespace

Int parse_bound(const std::string& text) {
  auto e = text.find_first_of("eE");
  if (e == std::string::npos) return parse_number<Int>(text, "bound");
  std::string mant = text.substr(0, e);
  int exp = parse_number<int>(std::string_view(text).substr(e + 1), "bound exponent");
  std::string digits = mant;
  auto dot = mant.find('.');
  if (dot != std::string::npos) {
    digits = mant.substr(0, dot) + mant.substr(dot + 1);
    exp -= static_cast<int>(mant.size() - dot - 1);
  }
  if (exp < 0 || digits.empty()) throw std::invalid_argument("bound is not an integer: " + text);
  Int v = parse_number<Int>(digits, "bound");
  for (int i = 0; i < exp; ++i) v = checked_mul(v, 10);
  return v;
}

double parse_density(const std::string& text) {
  auto slash = text.find('/');
  double d;
  if (slash == std::string::npos) {
    try {
      std::size_t used = 0;
      d = std::stod(text, &used);
      if (used != text.size()) throw std::invalid_argument("");
    } catch (const std::exception&) {
      throw std::invalid_argument("bad density: " + text);
    }
  } else {
    Int p = parse_number<Int>(std::string_view(text).substr(0, slash), "density");
    Int q = parse_number<Int>(std::string_view(text).substr(slash + 1), "density");
    if (q == 0) throw std::invalid_argument("bad density: " + text);
    d = static_cast<double>(p) / static_cast<double>(q);
  }
  if (!(d > 0 && d < 1)) throw std::invalid_argument("density must lie in (0, 1)");
  return d;
}

int run(const CommandConfig& c, std::ostream& out, std::ostream& err) {
  try {
    if (c.workers == 0) throw std::invalid_argument("--workers must be positive");
    if (c.bounds.empty()) throw std::invalid_argument("--bounds needs at least one value");
    for (std::size_t i = 0; i < c.bounds.size(); ++i)
      if (c.bounds[i] < 0 || (i && c.bounds[i] <= c.bounds[i - 1]))
        throw std::invalid_argument("--bounds must be non-negative and increasing");
    if (c.command == "selftest") return selftest_cmd(c, out);
    if (c.command != "axioms" && c.formula.empty()) throw std::invalid_argument("--formula is required");
    if (c.command == "normalize") return normalize_cmd(c, out);
    if (c.command == "mixed") return mixed_cmd(c, out);
    auto oracle = make_oracle(c.predicate, c.seed, c.density);
    if (c.command == "decide") return decide_cmd(c, *oracle, out);
    if (c.command == "verify") return verify_cmd(c, *oracle, out);
    if (c.command == "chi") return chi_cmd(c, *oracle, out);
    if (c.command == "axioms") return axioms_cmd(c, *oracle, out);
    throw std::invalid_argument("unknown command: " + c.command);
  } catch (const MixedPredicateError& e) {
    err << "error: " << e.what() << " (Pr/SF formulas are only counted by the `mixed` command)\n";
    return Usage;
  } catch (const ParseError& e) {
    err << "parse error at " << e.position() << ": " << e.what() << '\n';
    return Usage;
  } catch (const ResourceLimitError& e) {
    err << "resource limit: " << e.what() << '\n';
    return ResourceCap;
  } catch (const OverflowError& e) {
    err << "overflow: " << e.what() << '\n';
    return ResourceCap;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return Usage;
  }
}

int main_with_args(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Decide and verify solvability of predicate constraints on linear integer terms"};
  app.name("addrand");
  app.require_subcommand(1);
  CommandConfig c;
  std::vector<std::string> bounds_raw;
  std::string density_raw = "1/2", output = "text";

  const std::vector<std::pair<const char*, const char*>> commands{
      {"normalize", "split a basic formula into primary branches"},
      {"decide", "classify the solution set as Inconsistent, Finite or Infinite"},
      {"verify", "decide, then audit the verdict against sieve counts"},
      {"chi", "show the chi condition and its boundary for a primary formula"},
      {"axioms", "spot-check the randomness axioms of an oracle"},
      {"mixed", "count solutions of a Pr/SF conjunction (no classification)"},
      {"selftest", "run the acceptance suite"},
  };
  for (const auto& [name, help] : commands) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("--predicate", c.predicate, "primes | squarefree | generic")
        ->check(CLI::IsMember({"primes", "squarefree", "generic"}));
    sub->add_option("-f,--formula", c.formula, "formula text");
    sub->add_option("--bounds", bounds_raw, "window radii, e.g. 1e4,1e5")->delimiter(',');
    sub->add_option("--seed", c.seed, "generic oracle seed");
    sub->add_option("--density", density_raw, "generic oracle density in (0,1)");
    sub->add_option("--workers", c.workers, "worker threads");
    sub->add_option("--output", output, "text | json")->check(CLI::IsMember({"text", "json"}));
    sub->add_flag("--timing", c.timing, "include elapsed_ms in reports");
    sub->add_option("--branch-cap", c.branch_cap, "maximum normalization branches");
    sub->add_option("--samples", c.samples, "instances for axioms");
    sub->add_option("--max-sieve", c.max_sieve, "largest sieve radius");
    sub->add_flag("--quick", c.quick, "selftest with small windows");
    sub->add_option("--inject-fault", c.inject_fault, "selftest fault injection")->check(CLI::IsMember({"crt"}));
  }

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? Ok : Usage;
  }
  c.command = app.get_subcommands().front()->get_name();
  c.json = output == "json";
  try {
    c.density = parse_density(density_raw);
    if (!bounds_raw.empty()) {
      c.bounds.clear();
      for (const auto& b : bounds_raw) c.bounds.push_back(parse_bound(b));
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return Usage;
  }
  return run(c, out, err);
}

}  // namespace addrand::cli
