#include "addrand/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

#include "addrand/decide.hpp"
#include "addrand/normalize.hpp"
#include "addrand/oracle.hpp"
#include "addrand/primes.hpp"
#include "addrand/report.hpp"
#include "addrand/syntax.hpp"
#include "addrand/verify.hpp"

namespace addrand {

namespace {

std::string fnv1a(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

struct Outcome {
  bool passed = true;
  std::ostringstream detail;
  Json digest = Json::array();

  void fail(const std::string& why) {
    if (passed) detail << why;
    passed = false;
  }
};

ScanOptions scan_options(unsigned workers) {
  ScanOptions o;
  o.workers = workers;
  return o;
}

// 1. Branch sets partition the solution set.
void normalization_partition(const AcceptanceConfig& cfg, Outcome& out) {
  const std::size_t formulas = cfg.quick ? 50 : 200;
  const Int bound = cfg.quick ? 1000 : 5000;
  SquareFreeOracle sf;
  std::vector<Json> rows(formulas);
  std::vector<std::string> errors(formulas);
  parallel_for(formulas, cfg.workers, [&](std::size_t i) {
    BasicFormula f = random_basic_formula(1000 + i);
    try {
      auto branches = normalize_basic(f);
      auto rep = branch_cover_check(f, branches, bound, sf);
      Json h = Json::array();
      for (const auto& b : branches) h.push_back(to_json(b));
      rows[i] = {{"formula", render(f)}, {"branches", branches.size()}, {"branch_hash", fnv1a(h.dump())},
                 {"satisfying", rep.satisfying}, {"counterexamples", rep.counterexample_count}};
      if (!rep.ok())
        errors[i] = render(f) + ": " + std::to_string(rep.counterexample_count) + " counterexamples, first b=" +
                    std::to_string(rep.counterexamples.front().b);
    } catch (const std::exception& e) {
      rows[i] = {{"formula", render(f)}, {"error", e.what()}};
      errors[i] = render(f) + ": " + e.what();
    }
  });
  std::size_t total_branches = 0, failures = 0;
  for (std::size_t i = 0; i < formulas; ++i) {
    out.digest.push_back(rows[i]);
    if (rows[i].contains("branches")) total_branches += rows[i]["branches"].get<std::size_t>();
    if (!errors[i].empty()) {
      ++failures;
      out.fail(errors[i]);
    }
  }
  if (out.passed)
    out.detail << formulas << " formulas, " << total_branches << " branches, window |b| <= " << bound
               << ", 0 counterexamples";
  else
    out.detail << " (" << failures << " failing formulas)";
}

Instance random_good_instance(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> rdist(0, 3), rpdist(0, 2);
  std::uniform_int_distribution<Int> cdist(1, 5), zdist(-30, 30);
  for (;;) {
    Instance inst;
    int r = rdist(rng), rp = rpdist(rng);
    for (int i = 0; i < r; ++i) inst.positive.push_back({cdist(rng), zdist(rng)});
    for (int i = 0; i < rp; ++i) inst.negative.push_back({cdist(rng), zdist(rng)});
    PrimaryFormula f = deduplicated({inst.positive, inst.negative});
    if (r + rp > 0 && is_good_position(f)) return Instance::from(f);
  }
}

// 2. Square-free verdicts against exhaustive scans.
void squarefree_exactness(const AcceptanceConfig& cfg, Outcome& out) {
  const std::size_t instances = cfg.quick ? 50 : 200;
  const Int finite_window = cfg.quick ? 100'000 : 1'000'000;
  const Int inf_lo = cfg.quick ? 10'000 : 100'000;
  const Int inf_hi = 2 * inf_lo;
  SquareFreeOracle sf;
  std::mt19937_64 rng(2024);
  std::vector<Instance> insts;
  for (std::size_t i = 0; i < instances; ++i) insts.push_back(random_good_instance(rng));
  ScanOptions inner = scan_options(1);
  MembershipSource source(sf, 5 * finite_window + 30, scan_options(cfg.workers));
  std::vector<Json> rows(instances);
  std::vector<std::string> errors(instances);
  parallel_for(instances, cfg.workers, [&](std::size_t i) {
    PrimaryFormula f{insts[i].positive, insts[i].negative};
    Classification c = classify_primary(f, sf);
    BasicFormula b = to_basic(f);
    Json row{{"formula", render(f)}, {"classification", to_json(c)}};
    if (c.verdict == Verdict::Finite) {
      Int bounds[] = {finite_window};
      auto r = scan(b, source, bounds, inner);
      row["count"] = r.counts[0];
      std::vector<Int> inside;
      for (Int s : c.solutions)
        if (s >= -finite_window && s <= finite_window) inside.push_back(s);
      if (r.solutions != inside || r.counts[0] != inside.size())
        errors[i] = render(f) + ": finite set differs from the scan";
    } else if (c.verdict == Verdict::Infinite) {
      Int bounds[] = {inf_lo, inf_hi};
      auto r = scan(b, source, bounds, inner);
      row["counts"] = r.counts;
      if (r.counts[0] < 10 || r.counts[1] <= r.counts[0])
        errors[i] = render(f) + ": infinite verdict but counts " + std::to_string(r.counts[0]) + ", " +
                    std::to_string(r.counts[1]);
    } else {
      errors[i] = render(f) + ": good-position instance classified inconsistent";
    }
    rows[i] = row;
  });
  std::size_t finite = 0, infinite = 0;
  for (std::size_t i = 0; i < instances; ++i) {
    out.digest.push_back(rows[i]);
    std::string v = rows[i]["classification"]["verdict"];
    finite += v == "Finite";
    infinite += v == "Infinite";
    if (!errors[i].empty()) out.fail(errors[i]);
  }
  if (out.passed)
    out.detail << instances << " instances: " << finite << " finite (exact on |x| <= " << finite_window << "), "
               << infinite << " infinite (count(" << inf_lo << ") >= 10, growing to " << inf_hi << ")";
}

// 3. P(x) & P(x+1) under the primes.
void prime_finite_case(const AcceptanceConfig& cfg, Outcome& out) {
  const Int window = cfg.quick ? 100'000 : 1'000'000;
  PrimeOracle pr;
  BasicFormula f = parse_formula("P(x) & P(x+1)");
  Classification c = decide_exists_basic(f, pr);
  auto counted = count_solutions(f, pr, window, scan_options(cfg.workers));
  out.digest.push_back({{"classification", to_json(c)}, {"count", counted.count}, {"solutions", counted.window_solutions}});
  const std::vector<Int> expected{-3, 2};
  if (c.verdict != Verdict::Finite) out.fail("verdict is " + std::string(to_string(c.verdict)));
  else if (c.solutions != expected) out.fail("solution set differs from {-3, 2}");
  else if (counted.window_solutions != expected) out.fail("scan disagrees with {-3, 2}");
  if (out.passed) out.detail << "Finite {-3, 2}, witness k=" << *c.witness_k << ", scan of |x| <= " << window << " agrees";
}

// 4. Twin primes: conditional infinitude with growing counts.
void dickson_evidence(const AcceptanceConfig& cfg, Outcome& out) {
  std::vector<Int> bounds = cfg.quick ? std::vector<Int>{1'000, 10'000, 100'000}
                                      : std::vector<Int>{10'000, 100'000, 1'000'000};
  PrimeOracle pr;
  BasicFormula f = parse_formula("P(x) & P(x+2)");
  auto rep = audit(f, pr, bounds, scan_options(cfg.workers));
  out.digest.push_back(to_json(rep, false));
  if (rep.verdict.verdict != Verdict::Infinite ||
      rep.verdict.conditionality != Conditionality::DicksonConditional) {
    out.fail("expected Infinite (dickson-conditional)");
    return;
  }
  if (rep.status == AuditStatus::Refuted) out.fail("audit refuted: " + rep.note);
  out.detail << "Infinite (dickson-conditional), counts";
  for (std::size_t i = 0; i < bounds.size(); ++i) out.detail << " " << rep.counts[i];
  out.detail << ", status " << to_string(rep.status);
}

// 5. Boundaries of the worked examples.
void chi_fidelity(const AcceptanceConfig&, Outcome& out) {
  PrimeOracle pr;
  SquareFreeOracle sf;
  GenericOracle gen(7, 0.5);
  auto twin = Instance::from(parse_primary("P(x) & P(x+2)"));
  auto four = Instance::from(parse_primary("P(4x)"));
  auto pb = build_chi(pr, twin).boundary.elements();
  auto sb = build_chi(sf, four).boundary.elements();
  out.digest.push_back({{"primes", pb}, {"squarefree", sb}});
  if (pb != std::vector<Int>{2}) out.fail("primes boundary for P(x) & P(x+2) is not {2}");
  if (sb != std::vector<Int>{4, 9, 25}) out.fail("square-free boundary for P(4x) is not {4, 9, 25}");
  for (const char* text : {"P(x) & P(x+2)", "P(4x)", "P(x) & P(x+1) & !P(x+3)", "P(6x+3) & P(2x)", "!P(5x+1)"}) {
    auto inst = Instance::from(parse_primary(text));
    auto chi = build_chi(gen, inst);
    bool ok = chi.boundary.empty() && chi.trivially_true() && chi_holds(gen, inst);
    out.digest.push_back({{"generic", text}, {"ok", ok}});
    if (!ok) out.fail(std::string("generic oracle has a boundary for ") + text);
  }
  if (out.passed) out.detail << "primes {2}, square-free {4, 9, 25}, generic empty with chi true";
}

// 6. Arithmetic kernel against residue enumeration.
void arithmetic_kernel(const AcceptanceConfig& cfg, Outcome& out) {
  std::mt19937_64 rng(6);
  std::uniform_int_distribution<Int> val(-1000, 1000), mod(1, 1000), small(1, 100);
  std::size_t gcd_n = 0, lin_n = 0, crt_n = 0;
  const std::size_t total = 10'000;
  for (std::size_t i = 0; i < total; ++i) {
    switch (i % 3) {
      case 0: {
        Int a = val(rng), b = val(rng);
        auto [g, u, v] = ext_gcd(a, b);
        Int brute = 0;
        for (Int d = std::max(std::abs(a), std::abs(b)); d >= 1; --d)
          if (a % d == 0 && b % d == 0) {
            brute = d;
            break;
          }
        if (g != brute || u * a + v * b != g) out.fail("ext_gcd(" + std::to_string(a) + ", " + std::to_string(b) + ")");
        ++gcd_n;
        break;
      }
      case 1: {
        Int c = 2 * val(rng), k = 2 * val(rng), n = mod(rng);
        auto sol = solve_linear_congruence(c, k, n);
        std::vector<Int> brute;
        for (Int x = 0; x < n; ++x)
          if (floor_mod(c * x + k, n) == 0) brute.push_back(x);
        bool ok = sol ? (n % sol->modulus == 0 && brute.size() == static_cast<std::size_t>(n / sol->modulus) &&
                         std::all_of(brute.begin(), brute.end(), [&](Int x) { return sol->contains(x); }))
                      : brute.empty();
        if (!ok) out.fail("solve_linear_congruence(" + std::to_string(c) + ", " + std::to_string(k) + ", " +
                          std::to_string(n) + ")");
        ++lin_n;
        break;
      }
      default: {
        bool three = (i / 3) % 2 == 1;
        std::vector<CongruenceClass> cs;
        for (int j = 0; j < (three ? 3 : 2); ++j) {
          Int m = three ? small(rng) : mod(rng);
          cs.emplace_back(m, val(rng));
        }
        auto res = cfg.crt(cs);
        // Walk the first class across a full period of the product of moduli.
        Int prod = 1;
        for (const auto& c : cs) prod *= c.modulus;
        std::vector<Int> hits;
        for (Int x = cs[0].residue; x < prod; x += cs[0].modulus)
          if (std::all_of(cs.begin(), cs.end(), [&](const CongruenceClass& c) { return c.contains(x); }))
            hits.push_back(x);
        bool ok = res ? (prod % res->modulus == 0 && hits.size() == static_cast<std::size_t>(prod / res->modulus) &&
                         std::all_of(hits.begin(), hits.end(), [&](Int x) { return res->contains(x); }))
                      : hits.empty();
        std::vector<CongruenceClass> rev(cs.rbegin(), cs.rend());
        if (ok && cfg.crt(rev) != res) ok = false;
        if (!ok) out.fail("crt disagrees with enumeration on instance " + std::to_string(i));
        ++crt_n;
        break;
      }
    }
  }
  out.digest.push_back({{"ext_gcd", gcd_n}, {"solve", lin_n}, {"crt", crt_n}, {"passed", out.passed}});
  if (out.passed)
    out.detail << gcd_n << " ext_gcd, " << lin_n << " linear congruences, " << crt_n << " CRT instances exact";
}

// 7. Symmetry and trapped sets.
void symmetry_and_traps(const AcceptanceConfig& cfg, Outcome& out) {
  const Int sym = 100'000;
  const Int window = cfg.quick ? 100'000 : 1'000'000;
  PrimeOracle pr;
  SquareFreeOracle sf;
  GenericOracle gen(0, 0.5);
  for (const RandomnessOracle* o : {static_cast<const RandomnessOracle*>(&pr),
                                    static_cast<const RandomnessOracle*>(&sf),
                                    static_cast<const RandomnessOracle*>(&gen)}) {
    std::vector<char> bad(static_cast<std::size_t>(cfg.workers), 0);
    std::size_t asym = 0;
    for (Int n = 1; n <= sym; ++n) asym += o->contains(n) != o->contains(-n);
    if (o->contains(0)) ++asym;
    out.digest.push_back({{"oracle", o->name()}, {"asymmetric", asym}});
    if (asym) out.fail(o->name() + " is not symmetric");
  }
  auto prw = sieve_window(pr, window, scan_options(cfg.workers));
  auto sfw = sieve_window(sf, window, scan_options(cfg.workers));
  for (Int k : primes_up_to(50)) {
    std::vector<Int> found;
    for (Int n = -(window / k) * k; n <= window; n += k)
      if (prw.test(n)) found.push_back(n);
    out.digest.push_back({{"prime", k}, {"found", found}});
    if (found != std::vector<Int>{-k, k} || found != pr.boundary_trapped_set(k))
      out.fail("primes divisible by " + std::to_string(k) + " are not {-k, k}");
  }
  for (Int p : primes_up_to(7)) {
    Int k = p * p;
    std::size_t found = 0;
    for (Int n = -(window / k) * k; n <= window; n += k) found += sfw.test(n);
    out.digest.push_back({{"square", k}, {"found", found}});
    if (found != 0 || !sf.boundary_trapped_set(k).empty())
      out.fail("square-free multiples of " + std::to_string(k) + " exist");
  }
  if (out.passed)
    out.detail << "symmetry on |n| <= " << sym << " for all oracles; trapped sets exact on |n| <= " << window;
}

// 8. decide_exists_basic against direct evaluation.
void decide_vs_scan(const AcceptanceConfig& cfg, Outcome& out) {
  const std::size_t formulas = cfg.quick ? 25 : 100;
  const Int window = cfg.quick ? 20'000 : 100'000;
  SquareFreeOracle sf;
  std::vector<BasicFormula> fs;
  Int vb = 0;
  for (std::size_t i = 0; i < formulas; ++i) {
    fs.push_back(random_basic_formula(50'000 + i));
    vb = std::max(vb, value_bound(fs.back(), window));
  }
  MembershipSource source(sf, vb, scan_options(cfg.workers));
  std::vector<Json> rows(formulas);
  std::vector<std::string> errors(formulas);
  parallel_for(formulas, cfg.workers, [&](std::size_t i) {
    const auto& f = fs[i];
    try {
      Classification c = decide_exists_basic(f, sf);
      Int bounds[] = {window};
      ScanOptions inner = scan_options(1);
      inner.solution_cap = std::numeric_limits<std::size_t>::max();
      auto r = scan(f, source, bounds, inner);
      rows[i] = {{"formula", render(f)}, {"classification", to_json(c)}, {"count", r.counts[0]}};
      switch (c.verdict) {
        case Verdict::Inconsistent:
          if (r.counts[0] != 0) errors[i] = render(f) + ": inconsistent but the window has solutions";
          break;
        case Verdict::Finite: {
          std::vector<Int> inside;
          for (Int s : c.solutions)
            if (s >= -window && s <= window) inside.push_back(s);
          if (inside != r.solutions) errors[i] = render(f) + ": finite set differs from the window scan";
          break;
        }
        case Verdict::Infinite:
          if (r.counts[0] == 0) errors[i] = render(f) + ": infinite but no solutions in the window";
          break;
      }
    } catch (const std::exception& e) {
      rows[i] = {{"formula", render(f)}, {"error", e.what()}};
      errors[i] = render(f) + ": " + e.what();
    }
  });
  std::size_t counts[3] = {0, 0, 0};
  for (std::size_t i = 0; i < formulas; ++i) {
    out.digest.push_back(rows[i]);
    if (rows[i].contains("classification")) {
      std::string v = rows[i]["classification"]["verdict"];
      counts[v == "Inconsistent" ? 0 : v == "Finite" ? 1 : 2]++;
    }
    if (!errors[i].empty()) out.fail(errors[i]);
  }
  if (out.passed)
    out.detail << formulas << " formulas on |x| <= " << window << ": " << counts[0] << " inconsistent, " << counts[1]
               << " finite, " << counts[2] << " infinite, all agree";
}

const char* title_of(int id) {
  switch (id) {
    case 1: return "normalization partition";
    case 2: return "square-free classification exactness";
    case 3: return "prime finite case";
    case 4: return "Dickson-conditional evidence";
    case 5: return "chi/boundary fidelity";
    case 6: return "arithmetic kernel";
    case 7: return "symmetry and trapped sets";
    case 8: return "decide vs direct evaluation";
    case 9: return "determinism";
  }
  return "?";
}

}  // namespace

BasicFormula random_basic_formula(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> count(1, 4), kind(0, 3), sign(0, 1);
  std::uniform_int_distribution<Int> coeff(1, 6), constant(-50, 50), index(1, 6), modulus(1, 12);
  BasicFormula f;
  int atoms = count(rng);
  for (int i = 0; i < atoms; ++i) {
    Int c = coeff(rng) * (sign(rng) ? 1 : -1);
    Int z = constant(rng);
    if (kind(rng) == 0) {
      Int n = modulus(rng);
      std::uniform_int_distribution<Int> residue(0, n - 1);
      f.congruences.push_back({c, z, n, residue(rng)});
    } else {
      Int k = index(rng);
      f.atoms.push_back({canonical({c, z}), k, sign(rng) == 1});
    }
  }
  return f;
}

CriterionResult run_criterion(int id, const AcceptanceConfig& config) {
  auto start = std::chrono::steady_clock::now();
  Outcome out;
  try {
    switch (id) {
      case 1: normalization_partition(config, out); break;
      case 2: squarefree_exactness(config, out); break;
      case 3: prime_finite_case(config, out); break;
      case 4: dickson_evidence(config, out); break;
      case 5: chi_fidelity(config, out); break;
      case 6: arithmetic_kernel(config, out); break;
      case 7: symmetry_and_traps(config, out); break;
      case 8: decide_vs_scan(config, out); break;
      default: throw std::invalid_argument("no such criterion");
    }
  } catch (const std::exception& e) {
    out.fail(std::string("exception: ") + e.what());
  }
  CriterionResult r;
  r.id = id;
  r.title = title_of(id);
  r.passed = out.passed;
  r.detail = out.detail.str();
  r.digest = fnv1a(out.digest.dump());
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

std::string format_result(const CriterionResult& r) {
  char secs[32];
  std::snprintf(secs, sizeof secs, "%.2fs", r.seconds);
  return std::string(r.passed ? "[PASS] " : "[FAIL] ") + std::to_string(r.id) + ". " + r.title + " (" + secs +
         "): " + r.detail;
}

std::vector<CriterionResult> run_acceptance(const AcceptanceConfig& config, std::ostream* log) {
  std::vector<CriterionResult> results;
  for (int id = 1; id <= 8; ++id) {
    results.push_back(run_criterion(id, config));
    if (log) *log << format_result(results.back()) << std::endl;
  }
  if (!config.check_determinism) return results;

  auto start = std::chrono::steady_clock::now();
  CriterionResult det;
  det.id = 9;
  det.title = title_of(9);
  det.passed = true;
  std::ostringstream detail;
  for (unsigned w : {1u, 4u, 8u}) {
    AcceptanceConfig c = config;
    c.workers = w;
    for (int id = 1; id <= 8; ++id) {
      auto again = run_criterion(id, c);
      if (again.digest != results[static_cast<std::size_t>(id - 1)].digest) {
        if (det.passed) detail << "criterion " << id << " output differs with " << w << " workers";
        det.passed = false;
      }
    }
  }
  if (det.passed) detail << "criteria 1-8 byte-identical across reruns with 1, 4 and 8 workers";
  det.detail = detail.str();
  det.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  results.push_back(det);
  if (log) *log << format_result(det) << std::endl;
  return results;
}

}  // namespace addrand
