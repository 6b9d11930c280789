#include "addrand/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "addrand/primes.hpp"

namespace addrand {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

std::string_view to_string(OracleKind k) {
  switch (k) {
    case OracleKind::Primes: return "primes";
    case OracleKind::SquareFree: return "squarefree";
    case OracleKind::Generic: return "generic";
  }
  return "?";
}

std::string_view to_string(Conditionality c) {
  switch (c) {
    case Conditionality::Unconditional: return "unconditional";
    case Conditionality::DicksonConditional: return "dickson-conditional";
    case Conditionality::GenericProbabilistic: return "generic-probabilistic";
  }
  return "?";
}

void RandomnessOracle::fill_segment(Int first, std::span<std::uint8_t> out) const {
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = contains(first + static_cast<Int>(i));
}

namespace {

u64 magnitude(Int n) { return n < 0 ? u64(0) - static_cast<u64>(n) : static_cast<u64>(n); }

u64 table_square_limit() {
  u64 p = small_primes().back();
  return p * p;
}

}  // namespace

// ---------------------------------------------------------------- primes

bool PrimeOracle::contains(Int n) const { return is_prime(magnitude(n)); }

void PrimeOracle::fill_segment(Int first, std::span<std::uint8_t> out) const {
  if (out.empty()) return;
  u64 lo = static_cast<u64>(first);
  u64 hi = lo + out.size() - 1;
  if (hi >= table_square_limit()) {
    RandomnessOracle::fill_segment(first, out);
    return;
  }
  std::fill(out.begin(), out.end(), std::uint8_t{1});
  for (u64 v = lo; v < 2 && v <= hi; ++v) out[v - lo] = 0;
  for (u64 p : small_primes()) {
    if (p * p > hi) break;
    u64 start = std::max(p * p, (lo + p - 1) / p * p);
    for (u64 m = start; m <= hi; m += p) out[m - lo] = 0;
  }
}

std::vector<Int> PrimeOracle::boundary_trapped_set(Int k) const {
  if (k < 2 || !is_prime(static_cast<u64>(k)))
    throw std::invalid_argument("primes: boundary elements are primes, got " + std::to_string(k));
  return {-k, k};
}

// ------------------------------------------------------------ square-free

bool SquareFreeOracle::contains(Int n) const { return is_square_free(n); }

void SquareFreeOracle::fill_segment(Int first, std::span<std::uint8_t> out) const {
  if (out.empty()) return;
  u64 lo = static_cast<u64>(first);
  u64 hi = lo + out.size() - 1;
  if (hi >= table_square_limit()) {
    RandomnessOracle::fill_segment(first, out);
    return;
  }
  std::fill(out.begin(), out.end(), std::uint8_t{1});
  if (lo == 0) out[0] = 0;
  for (u64 p : small_primes()) {
    u64 q = p * p;
    if (q > hi) break;
    u64 start = std::max(q, (lo + q - 1) / q * q);
    for (u64 m = start; m <= hi; m += q) out[m - lo] = 0;
  }
}

std::vector<Int> SquareFreeOracle::boundary_trapped_set(Int k) const {
  if (k >= 4) {
    u64 r = isqrt(static_cast<u64>(k));
    if (r * r == static_cast<u64>(k) && is_prime(r)) return {};
  }
  throw std::invalid_argument("squarefree: boundary elements are prime squares, got " +
                              std::to_string(k));
}

// ---------------------------------------------------------------- generic

namespace {

u64 splitmix64(u64 x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

GenericOracle::GenericOracle(std::uint64_t seed, double density)
    : seed_(seed), density_(density), key_(splitmix64(seed ^ 0x5851f42d4c957f2dULL)) {
  if (!(density > 0.0 && density < 1.0))
    throw std::invalid_argument("generic: density must lie strictly between 0 and 1");
  threshold_ = static_cast<u64>(std::ldexp(density, 64));
}

bool GenericOracle::contains(Int n) const {
  if (n == 0) return false;
  return splitmix64(magnitude(n) ^ key_) < threshold_;
}

std::vector<Int> GenericOracle::boundary_trapped_set(Int k) const {
  throw std::invalid_argument("generic: the boundary is empty, no trapped set at " +
                              std::to_string(k));
}

std::unique_ptr<RandomnessOracle> make_oracle(std::string_view name, std::uint64_t seed,
                                              double density) {
  if (name == "primes") return std::make_unique<PrimeOracle>();
  if (name == "squarefree") return std::make_unique<SquareFreeOracle>();
  if (name == "generic") return std::make_unique<GenericOracle>(seed, density);
  throw std::invalid_argument("unknown predicate '" + std::string(name) +
                              "' (expected primes, squarefree or generic)");
}

// --------------------------------------------------------------- boundary

bool Boundary::admits_prime(Int p) const {
  switch (shape) {
    case Shape::Empty: return false;
    case Shape::PrimesBelow: return static_cast<u128>(p) < limit;
    case Shape::PrimeSquaresUpTo: return static_cast<u128>(p) <= limit;
  }
  return false;
}

bool Boundary::contains(Int k) const {
  if (k < 2) return false;
  switch (shape) {
    case Shape::Empty: return false;
    case Shape::PrimesBelow: return is_prime(static_cast<u64>(k)) && admits_prime(k);
    case Shape::PrimeSquaresUpTo: {
      u64 r = isqrt(static_cast<u64>(k));
      return r * r == static_cast<u64>(k) && is_prime(r) && admits_prime(static_cast<Int>(r));
    }
  }
  return false;
}

bool Boundary::empty() const {
  switch (shape) {
    case Shape::Empty: return true;
    case Shape::PrimesBelow: return limit <= 2;
    case Shape::PrimeSquaresUpTo: return limit < 2;
  }
  return true;
}

std::vector<Int> Boundary::elements(std::size_t max_count) const {
  std::vector<Int> out;
  if (empty()) return out;
  auto primes = small_primes();
  if (admits_prime(static_cast<Int>(primes.back())))
    throw std::length_error("boundary too large to enumerate");
  for (auto p : primes) {
    if (!admits_prime(p)) break;
    if (out.size() == max_count) throw std::length_error("boundary too large to enumerate");
    out.push_back(shape == Shape::PrimesBelow ? Int{p} : Int{p} * p);
  }
  return out;
}

// -------------------------------------------------------------------- chi

namespace {

constexpr u128 kSaturated = ~u128{0};

u128 sat_mul(u128 a, u128 b) {
  if (a != 0 && b > kSaturated / a) return kSaturated;
  return a * b;
}

void require_positive_coeffs(const Instance& inst) {
  for (const auto* list : {&inst.positive, &inst.negative})
    for (const auto& t : *list)
      if (t.coeff < 1) throw std::invalid_argument("chi: instance terms need coefficients >= 1");
}

Boundary boundary_for(const RandomnessOracle& o, const Instance& inst) {
  Boundary b;
  std::size_t r = inst.positive.size();
  if (o.kind() == OracleKind::Generic || r == 0) return b;
  if (o.kind() == OracleKind::Primes) {
    // N = max(m_1, ..., m_r, r) + 1
    u128 n = r;
    for (const auto& t : inst.positive) n = std::max<u128>(n, static_cast<u128>(t.coeff));
    b.shape = Boundary::Shape::PrimesBelow;
    b.limit = n + 1;
  } else {
    // B = max(prod m_i, r) + 1
    u128 prod = 1;
    for (const auto& t : inst.positive) prod = sat_mul(prod, static_cast<u128>(t.coeff));
    u128 m = std::max<u128>(prod, r);
    b.shape = Boundary::Shape::PrimeSquaresUpTo;
    b.limit = m == kSaturated ? m : m + 1;
  }
  return b;
}

Int modulus_for(OracleKind kind, Int p) { return kind == OracleKind::SquareFree ? p * p : p; }

// True iff the positive terms cover every residue modulo k.
bool covers_all_residues(const std::vector<Term>& terms, Int k) {
  std::vector<CongruenceClass> classes;
  u128 total = 0;
  for (const auto& t : terms) {
    auto c = solve_linear_congruence(t.coeff, t.constant, k);
    if (!c) continue;
    if (c->modulus == 1) return true;
    total += static_cast<u128>(k / c->modulus);
    classes.push_back(*c);
  }
  if (total < static_cast<u128>(k)) return false;
  std::vector<bool> hit(static_cast<std::size_t>(k), false);
  for (const auto& c : classes)
    for (Int s = c.residue; s < k; s += c.modulus) hit[static_cast<std::size_t>(s)] = true;
  return std::all_of(hit.begin(), hit.end(), [](bool v) { return v; });
}

}  // namespace

bool ChiClause::holds(std::span<const Int> constants) const {
  if (constants.size() != coeffs.size())
    throw std::invalid_argument("chi clause: wrong number of constants");
  for (Int s = 0; s < modulus; ++s) {
    bool avoids = true;
    for (std::size_t i = 0; i < coeffs.size() && avoids; ++i) {
      __int128 v = static_cast<__int128>(coeffs[i]) * s + constants[i];
      avoids = v % modulus != 0;
    }
    if (avoids) return true;
  }
  return false;
}

bool ChiCondition::evaluate(std::span<const Int> constants) const {
  return std::all_of(clauses.begin(), clauses.end(),
                     [&](const ChiClause& c) { return c.holds(constants); });
}

ChiCondition build_chi(const RandomnessOracle& o, const Instance& inst) {
  require_positive_coeffs(inst);
  ChiCondition chi;
  chi.boundary = boundary_for(o, inst);
  if (chi.boundary.empty()) return chi;

  std::vector<Int> coeffs;
  for (const auto& t : inst.positive) coeffs.push_back(t.coeff);

  std::vector<Int> primes;
  constexpr u128 kMaterializeLimit = 1u << 16;
  if (chi.boundary.limit <= kMaterializeLimit) {
    primes = primes_up_to(static_cast<Int>(chi.boundary.limit));
  } else {
    chi.tautologies_elided = true;
    Int r = static_cast<Int>(inst.positive.size());
    primes = primes_up_to(std::min<Int>(r, small_primes().back()));
    for (Int m : coeffs)
      for (Int p : prime_factors(m)) primes.push_back(p);
    std::sort(primes.begin(), primes.end());
    primes.erase(std::unique(primes.begin(), primes.end()), primes.end());
  }
  for (Int p : primes) {
    if (!chi.boundary.admits_prime(p)) continue;
    chi.clauses.push_back({p, modulus_for(o.kind(), p), coeffs});
  }
  return chi;
}

std::optional<Int> failing_boundary_modulus(const RandomnessOracle& o, const Instance& inst) {
  require_positive_coeffs(inst);
  Boundary boundary = boundary_for(o, inst);
  if (boundary.empty()) return std::nullopt;
  const OracleKind kind = o.kind();
  const Int r = static_cast<Int>(inst.positive.size());

  // Primes p <= r: direct residue coverage.
  for (Int p : primes_up_to(std::min<Int>(r, small_primes().back()))) {
    if (!boundary.admits_prime(p)) break;
    if (covers_all_residues(inst.positive, modulus_for(kind, p))) return modulus_for(kind, p);
  }
  // Primes p > r: coverage needs one term vanishing identically mod p (mod p^2).
  std::optional<Int> best;
  for (const auto& t : inst.positive) {
    Int g = gcd(t.coeff, t.constant);
    for (Int p : prime_factors(g)) {
      if (p <= r || !boundary.admits_prime(p)) continue;
      if (kind == OracleKind::SquareFree && (g / p) % p != 0) continue;
      Int k = modulus_for(kind, p);
      if (!best || k < *best) best = k;
    }
  }
  return best;
}

bool chi_holds(const RandomnessOracle& o, const Instance& inst) {
  require_positive_coeffs(inst);
  if (!is_good_position({inst.positive, inst.negative}))
    throw std::invalid_argument("chi: instance is not in good position");
  return !failing_boundary_modulus(o, inst).has_value();
}

Int failing_boundary_witness(const RandomnessOracle& o, const Instance& inst) {
  auto k = failing_boundary_modulus(o, inst);
  if (!k) throw std::logic_error("failing_boundary_witness: chi holds for this instance");
  return *k;
}

// -------------------------------------------------------------- evaluation

bool holds(const RandomnessOracle& o, const PredicateAtom& a, Int x) {
  Int v = a.term.at(x);
  bool member = v % a.index == 0 && o.contains(v / a.index);
  return member == a.positive;
}

bool holds(const RandomnessOracle& o, const BasicFormula& f, Int x) {
  for (const auto& c : f.congruences)
    if (!c.holds(x)) return false;
  for (const auto& e : f.equalities)
    if (static_cast<__int128>(e.coeff) * x + e.constant != e.value) return false;
  for (const auto& a : f.atoms)
    if (!holds(o, a, x)) return false;
  return true;
}

bool holds(const RandomnessOracle& o, const PrimaryFormula& f, Int x) {
  for (const auto& t : f.positive)
    if (!o.contains(t.at(x))) return false;
  for (const auto& t : f.negative)
    if (o.contains(t.at(x))) return false;
  return true;
}

}  // namespace addrand
