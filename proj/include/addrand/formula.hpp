#pragma once

// Abstract syntax for conjunctions of congruences and signed predicate
// atoms over linear terms in the single variable x.

#include <compare>
#include <optional>
#include <span>
#include <vector>

#include "addrand/arith.hpp"

namespace addrand {

/// coeff * x + constant
struct Term {
  Int coeff = 0;
  Int constant = 0;

  bool is_constant() const { return coeff == 0; }
  /// Value at x; throws OverflowError when it does not fit.
  Int at(Int x) const { return checked_add(checked_mul(coeff, x), constant); }

  friend auto operator<=>(const Term&, const Term&) = default;
};

/// Representative of {t, -t} under the symmetric predicate: coeff >= 0, and
/// for constant terms a non-negative constant.
Term canonical(const Term& t);

/// coeff * x + constant = residue (mod modulus)
struct CongruenceAtom {
  Int coeff = 0;
  Int constant = 0;
  Int modulus = 1;
  Int residue = 0;

  bool holds(Int x) const;
  friend auto operator<=>(const CongruenceAtom&, const CongruenceAtom&) = default;
};

/// coeff * x + constant = value
struct EqualityAtom {
  Int coeff = 0;
  Int constant = 0;
  Int value = 0;

  friend auto operator<=>(const EqualityAtom&, const EqualityAtom&) = default;
};

/// P_index(term), or its negation. P_n(y) holds iff n | y and P(y / n).
struct PredicateAtom {
  Term term;
  Int index = 1;
  bool positive = true;

  friend auto operator<=>(const PredicateAtom&, const PredicateAtom&) = default;
};

struct BasicFormula {
  std::vector<CongruenceAtom> congruences;
  std::vector<EqualityAtom> equalities;
  std::vector<PredicateAtom> atoms;

  friend bool operator==(const BasicFormula&, const BasicFormula&) = default;
};

/// Signed plain P-atoms only.
struct PrimaryFormula {
  std::vector<Term> positive;
  std::vector<Term> negative;

  friend bool operator==(const PrimaryFormula&, const PrimaryFormula&) = default;
};

/// Prime/square-free conjunction used by the mixed counter.
struct MixedConjunction {
  std::vector<Term> pos_pr;
  std::vector<Term> neg_pr;
  std::vector<Term> pos_sf;
  std::vector<Term> neg_sf;

  friend bool operator==(const MixedConjunction&, const MixedConjunction&) = default;
};

BasicFormula to_basic(const PrimaryFormula& f);

/// Some primary formula equal to f when f has no congruences, no equalities
/// and only index-1 atoms.
std::optional<PrimaryFormula> as_primary(const BasicFormula& f);

/// Canonical terms, first occurrence kept, repeats dropped within each list.
PrimaryFormula deduplicated(const PrimaryFormula& f);

/// Rescales every non-constant atom to the lcm m of the coefficients:
/// P_n(m_i x + c_i) becomes P_{n m/m_i}(m x + (m/m_i) c_i).
BasicFormula unify_coefficients(const BasicFormula& f);

/// No term required both inside and outside the predicate.
bool is_good_position(const PrimaryFormula& f);

/// No term occurs positively in one member and negatively in another.
bool are_compatible(std::span<const PrimaryFormula> fs);

/// Concatenation of all conjuncts, deduplicated.
PrimaryFormula conjoin(std::span<const PrimaryFormula> fs);

}  // namespace addrand
