#pragma once

// Rewriting of basic formulas into primary formulas along an exhaustive set
// of residue branches. Each branch carries a substitution t(x) = c x + d and
// a primary formula psi with t(psi) inside the original formula; the images
// of the branches partition its solution set.

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "addrand/arith.hpp"
#include "addrand/errors.hpp"
#include "addrand/formula.hpp"
#include "addrand/oracle.hpp"

namespace addrand {

/// Derivation constants of one branch, in the order they are computed.
struct NormalizationTrace {
  Int m = 1;          // common coefficient after rescaling
  Int ell = 1;        // consolidated congruence ell*x + a = 0 (mod n)
  Int a = 0;
  Int n = 1;
  Int d = 1;          // gcd(ell, n)
  Int ell_prime = 1;  // ell / d
  Int n_prime = 1;    // n / d
  Int bezout = 0;     // bezout * ell_prime = 1 (mod n_prime)
  Int a_second = 0;   // b + a_second = 0 (mod n_prime)
  Int N = 1;          // lcm of the remaining predicate indices
  Int m0 = 0;         // residue of the preimage modulo N
  std::vector<Int> divided_constants;  // d_{i,k}, one per remaining atom

  friend bool operator==(const NormalizationTrace&, const NormalizationTrace&) = default;
};

struct NormalizationBranch {
  CongruenceClass witness_class;
  Int subst_coeff = 1;
  Int subst_const = 0;
  PrimaryFormula psi;
  /// Residue chosen for each negative atom, in atom order; 0 keeps the atom.
  std::vector<Int> labels;
  NormalizationTrace trace;

  Term substitution() const { return {subst_coeff, subst_const}; }
  /// Preimage e with t(e) = b, if b lies in the branch image.
  std::optional<Int> preimage(Int b) const;
  /// b = t(e) for some integer e satisfying psi.
  bool accepts(const RandomnessOracle& o, Int b) const;

  friend bool operator==(const NormalizationBranch&, const NormalizationBranch&) = default;
};

/// One alternative of a negated P_k atom: a congruence on its term, plus the
/// atom itself when the term is taken divisible by k.
struct NegatedCase {
  CongruenceAtom congruence;
  std::optional<PredicateAtom> retained;
};

/// not P_k(t) as: t = j (mod k) for j = 1..k-1, or t = 0 (mod k) with not P_k(t).
std::vector<NegatedCase> expand_neg_Pk(const PredicateAtom& atom);

struct NormalizeOptions {
  std::size_t branch_cap = 100000;
};

class BranchCapExceeded : public ResourceLimitError {
 public:
  using ResourceLimitError::ResourceLimitError;
};

/// Requires no equality atoms and no constant predicate terms.
std::vector<NormalizationBranch> normalize_basic(const BasicFormula& f,
                                                 const NormalizeOptions& options = {});

struct CoverCounterexample {
  Int b = 0;
  bool satisfies = false;
  std::size_t accepting = 0;
};

struct CoverReport {
  Int bound = 0;
  std::size_t satisfying = 0;
  std::size_t counterexample_count = 0;
  std::vector<CoverCounterexample> counterexamples;  // first 100

  bool ok() const { return counterexample_count == 0; }
};

/// Exhaustive soundness and completeness check of a branch set on [-bound, bound].
CoverReport branch_cover_check(const BasicFormula& f, std::span<const NormalizationBranch> branches,
                               Int bound, const RandomnessOracle& o);

}  // namespace addrand
