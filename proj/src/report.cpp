#include "addrand/report.hpp"

#include <sstream>

#include "addrand/syntax.hpp"

namespace addrand {

namespace {

template <class T>
Json optional_json(const std::optional<T>& v) {
  return v ? Json(*v) : Json(nullptr);
}

std::string join_ints(const std::vector<Int>& xs) {
  std::ostringstream os;
  for (std::size_t i = 0; i < xs.size(); ++i) os << (i ? " " : "") << xs[i];
  return os.str();
}

std::string boundary_shape(Boundary::Shape s) {
  switch (s) {
    case Boundary::Shape::Empty: return "empty";
    case Boundary::Shape::PrimesBelow: return "primes-below";
    case Boundary::Shape::PrimeSquaresUpTo: return "prime-squares-up-to";
  }
  return "?";
}

std::string u128_string(unsigned __int128 v) {
  if (v == 0) return "0";
  std::string s;
  while (v) {
    s.insert(s.begin(), static_cast<char>('0' + static_cast<int>(v % 10)));
    v /= 10;
  }
  return s;
}

}  // namespace

Json to_json(const Classification& c) {
  Json j;
  j["verdict"] = std::string(to_string(c.verdict));
  j["solutions"] = c.solutions;
  j["witness_k"] = optional_json(c.witness_k);
  j["conditionality"] = c.conditionality ? Json(std::string(to_string(*c.conditionality))) : Json(nullptr);
  j["branches"] = c.branches;
  j["chi"] = c.chi;
  if (c.compatible) j["compatible"] = *c.compatible;
  if (c.negative_obstruction) j["negative_obstruction"] = true;
  return j;
}

Json to_json(const NormalizationTrace& t) {
  Json j;
  j["m"] = t.m;
  j["ell"] = t.ell;
  j["a"] = t.a;
  j["n"] = t.n;
  j["d"] = t.d;
  j["ell_prime"] = t.ell_prime;
  j["n_prime"] = t.n_prime;
  j["bezout"] = t.bezout;
  j["a_second"] = t.a_second;
  j["N"] = t.N;
  j["m0"] = t.m0;
  j["divided_constants"] = t.divided_constants;
  return j;
}

Json to_json(const NormalizationBranch& b) {
  Json j;
  j["witness_class"] = {{"modulus", b.witness_class.modulus}, {"residue", b.witness_class.residue}};
  j["substitution"] = render(b.substitution());
  j["psi"] = render(b.psi);
  j["labels"] = b.labels;
  j["trace"] = to_json(b.trace);
  return j;
}

Json to_json(const ScanResult& r) {
  Json j;
  Json counts = Json::array();
  for (std::size_t i = 0; i < r.bounds.size(); ++i) counts.push_back({{"bound", r.bounds[i]}, {"count", r.counts[i]}});
  j["counts"] = counts;
  j["solutions"] = r.solutions;
  return j;
}

Json to_json(const VerificationReport& r, bool timing) {
  Json j;
  j["formula"] = r.formula;
  j["oracle"] = r.oracle;
  j["verdict"] = to_json(r.verdict);
  Json counts = Json::array();
  for (std::size_t i = 0; i < r.bounds.size(); ++i) counts.push_back({{"bound", r.bounds[i]}, {"count", r.counts[i]}});
  j["counts"] = counts;
  j["solutions"] = r.window_solutions;
  j["status"] = std::string(to_string(r.status));
  if (!r.note.empty()) j["note"] = r.note;
  if (timing) j["elapsed_ms"] = r.elapsed.count();
  return j;
}

Json to_json(const AxiomReport& r) {
  auto check = [](const AxiomCheck& c) { return Json{{"tested", c.tested}, {"passed", c.passed}}; };
  Json j;
  j["oracle"] = r.oracle;
  j["samples"] = r.samples;
  j["bound"] = r.bound;
  j["p1"] = check(r.p1);
  j["p2"] = check(r.p2);
  j["p3"] = check(r.p3);
  if (!r.p1_failures.empty()) j["p1_failures"] = r.p1_failures;
  j["status"] = std::string(to_string(r.status));
  if (!r.note.empty()) j["note"] = r.note;
  return j;
}

Json chi_report(const RandomnessOracle& o, const PrimaryFormula& input) {
  PrimaryFormula f = deduplicated(input);
  Instance inst = Instance::from(f);
  ChiCondition chi = build_chi(o, inst);
  Json j;
  j["formula"] = render(f);
  j["predicate"] = o.name();
  Json boundary;
  boundary["shape"] = boundary_shape(chi.boundary.shape);
  boundary["limit"] = u128_string(chi.boundary.limit);
  try {
    boundary["elements"] = chi.boundary.elements();
  } catch (const std::length_error&) {
    boundary["elements"] = nullptr;
  }
  j["boundary"] = boundary;
  std::vector<Int> constants;
  for (const auto& t : inst.positive) constants.push_back(t.constant);
  Json clauses = Json::array();
  for (const auto& c : chi.clauses)
    clauses.push_back({{"prime", c.prime}, {"modulus", c.modulus}, {"holds", c.holds(constants)}});
  j["clauses"] = clauses;
  j["tautologies_elided"] = chi.tautologies_elided;
  bool good = is_good_position(f);
  j["good_position"] = good;
  if (!good) return j;
  bool holds_now = chi_holds(o, inst);
  j["chi"] = holds_now;
  if (!holds_now) {
    Int k = failing_boundary_witness(o, inst);
    j["witness_k"] = k;
    j["trapped_set"] = o.boundary_trapped_set(k);
  }
  return j;
}

void print_text(std::ostream& os, const Classification& c) {
  os << "verdict: " << to_string(c.verdict) << '\n';
  if (c.verdict == Verdict::Finite) {
    os << "solutions: {" << join_ints(c.solutions) << "}\n";
    if (c.witness_k) os << "witness_k: " << *c.witness_k << '\n';
    if (c.negative_obstruction) os << "negative terms obstructed beyond their zeros\n";
  }
  if (c.conditionality) os << "conditionality: " << to_string(*c.conditionality) << '\n';
  if (c.compatible) os << "compatible: " << (*c.compatible ? "yes" : "no") << '\n';
  os << "branches: " << c.branches << '\n';
}

void print_text(std::ostream& os, std::span<const NormalizationBranch> branches) {
  os << branches.size() << " branch" << (branches.size() == 1 ? "" : "es") << '\n';
  for (std::size_t i = 0; i < branches.size(); ++i) {
    const auto& b = branches[i];
    const auto& t = b.trace;
    os << "[" << i << "] x = " << b.witness_class.residue << " mod " << b.witness_class.modulus
       << "  t(x) = " << render(b.substitution()) << "  psi = " << render(b.psi) << '\n';
    os << "    labels: [" << join_ints(b.labels) << "]\n";
    os << "    m=" << t.m << " ell=" << t.ell << " a=" << t.a << " n=" << t.n << " d=" << t.d
       << " ell'=" << t.ell_prime << " n'=" << t.n_prime << " bezout=" << t.bezout << " a''=" << t.a_second
       << " N=" << t.N << " m0=" << t.m0 << " d_ik=[" << join_ints(t.divided_constants) << "]\n";
  }
}

void print_text(std::ostream& os, const VerificationReport& r, bool timing) {
  os << "formula: " << r.formula << '\n' << "predicate: " << r.oracle << '\n';
  print_text(os, r.verdict);
  for (std::size_t i = 0; i < r.bounds.size(); ++i)
    os << "count[|x| <= " << r.bounds[i] << "]: " << r.counts[i] << '\n';
  os << "window solutions (first " << r.window_solutions.size() << "): " << join_ints(r.window_solutions) << '\n';
  os << "status: " << to_string(r.status) << '\n';
  if (!r.note.empty()) os << "note: " << r.note << '\n';
  if (timing) os << "elapsed: " << r.elapsed.count() << " ms\n";
}

void print_text(std::ostream& os, const AxiomReport& r) {
  os << "predicate: " << r.oracle << "  samples: " << r.samples << "  window: " << r.bound << '\n';
  os << "P1 (chi true => solution): " << r.p1.passed << "/" << r.p1.tested << '\n';
  for (const auto& f : r.p1_failures) os << "  no solution: " << f << '\n';
  os << "P2 (witness covers residues): " << r.p2.passed << "/" << r.p2.tested << '\n';
  os << "P3 (trapped sets): " << r.p3.passed << "/" << r.p3.tested << '\n';
  os << "status: " << to_string(r.status) << '\n';
  if (!r.note.empty()) os << "note: " << r.note << '\n';
}

}  // namespace addrand
