#pragma once

// Additively random predicates: membership, the congruential condition chi
// with its boundary, and the finite sets trapped at boundary elements.

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "addrand/formula.hpp"

namespace addrand {

enum class OracleKind { Primes, SquareFree, Generic };

/// How much an Infinite verdict from this oracle is worth.
enum class Conditionality { Unconditional, DicksonConditional, GenericProbabilistic };

std::string_view to_string(OracleKind k);
std::string_view to_string(Conditionality c);

/// Concrete positive and negative terms of a primary formula.
struct Instance {
  std::vector<Term> positive;
  std::vector<Term> negative;

  static Instance from(const PrimaryFormula& f) { return {f.positive, f.negative}; }
  friend bool operator==(const Instance&, const Instance&) = default;
};

class RandomnessOracle {
 public:
  virtual ~RandomnessOracle() = default;

  virtual OracleKind kind() const = 0;
  virtual Conditionality conditionality() const = 0;
  /// Membership in the predicate; symmetric in n, false at 0.
  virtual bool contains(Int n) const = 0;
  /// out[i] = contains(first + i). Requires first >= 0.
  virtual void fill_segment(Int first, std::span<std::uint8_t> out) const;
  /// The set of members divisible by k, for k in some boundary of this oracle.
  virtual std::vector<Int> boundary_trapped_set(Int k) const = 0;

  std::string name() const { return std::string(to_string(kind())); }
};

class PrimeOracle final : public RandomnessOracle {
 public:
  OracleKind kind() const override { return OracleKind::Primes; }
  Conditionality conditionality() const override { return Conditionality::DicksonConditional; }
  bool contains(Int n) const override;
  void fill_segment(Int first, std::span<std::uint8_t> out) const override;
  std::vector<Int> boundary_trapped_set(Int k) const override;
};

class SquareFreeOracle final : public RandomnessOracle {
 public:
  OracleKind kind() const override { return OracleKind::SquareFree; }
  Conditionality conditionality() const override { return Conditionality::Unconditional; }
  bool contains(Int n) const override;
  void fill_segment(Int first, std::span<std::uint8_t> out) const override;
  std::vector<Int> boundary_trapped_set(Int k) const override;
};

/// Seeded symmetric pseudo-random set of density `density`.
class GenericOracle final : public RandomnessOracle {
 public:
  explicit GenericOracle(std::uint64_t seed = 0, double density = 0.5);

  OracleKind kind() const override { return OracleKind::Generic; }
  Conditionality conditionality() const override { return Conditionality::GenericProbabilistic; }
  bool contains(Int n) const override;
  std::vector<Int> boundary_trapped_set(Int k) const override;

  std::uint64_t seed() const { return seed_; }
  double density() const { return density_; }

 private:
  std::uint64_t seed_;
  double density_;
  std::uint64_t key_;
  std::uint64_t threshold_;
};

/// "primes", "squarefree" or "generic".
std::unique_ptr<RandomnessOracle> make_oracle(std::string_view name, std::uint64_t seed = 0,
                                              double density = 0.5);

/// Boundary of chi: the primes p < limit (prime oracle), the squares p^2 of
/// primes p <= limit (square-free oracle), or nothing (generic oracle).
struct Boundary {
  enum class Shape { Empty, PrimesBelow, PrimeSquaresUpTo };

  Shape shape = Shape::Empty;
  /// N for PrimesBelow, B for PrimeSquaresUpTo; saturates instead of wrapping.
  unsigned __int128 limit = 0;

  bool contains(Int k) const;
  /// Does p (a prime) index an element of the boundary?
  bool admits_prime(Int p) const;
  /// Elements in increasing order. Throws std::length_error beyond max_count.
  std::vector<Int> elements(std::size_t max_count = 1u << 20) const;
  bool empty() const;
};

/// One conjunct of chi: exists s < modulus with coeffs[i]*s + z_i != 0 (mod
/// modulus) for every positive term i. The z_i stay symbolic.
struct ChiClause {
  Int prime = 0;
  Int modulus = 0;  // p or p^2
  std::vector<Int> coeffs;

  bool holds(std::span<const Int> constants) const;
};

struct ChiCondition {
  Boundary boundary;
  /// Increasing modulus. When `tautologies_elided` is set, conjuncts at primes
  /// p > r dividing no coefficient are omitted: each positive term then rules
  /// out a single residue, so those conjuncts hold for every z.
  std::vector<ChiClause> clauses;
  bool tautologies_elided = false;

  bool trivially_true() const { return clauses.empty(); }
  /// Evaluates every clause by enumerating residues.
  bool evaluate(std::span<const Int> constants) const;
};

/// chi for the positive coefficient shape of `inst`; negative terms play no role.
ChiCondition build_chi(const RandomnessOracle& o, const Instance& inst);

/// Whether chi holds at the instance constants. Rejects instances that are
/// not in good position with std::invalid_argument.
bool chi_holds(const RandomnessOracle& o, const Instance& inst);

/// Smallest boundary element k at which every residue s < k sends some
/// positive term to 0 mod k; nullopt exactly when chi holds.
std::optional<Int> failing_boundary_modulus(const RandomnessOracle& o, const Instance& inst);

/// failing_boundary_modulus, but an error when chi holds.
Int failing_boundary_witness(const RandomnessOracle& o, const Instance& inst);

/// Evaluation of formulas under an oracle.
bool holds(const RandomnessOracle& o, const PredicateAtom& a, Int x);
bool holds(const RandomnessOracle& o, const BasicFormula& f, Int x);
bool holds(const RandomnessOracle& o, const PrimaryFormula& f, Int x);

}  // namespace addrand
