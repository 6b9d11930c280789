#pragma once

// Inconsistent / Finite / Infinite classification of primary formulas,
// conjunctions of them, and basic formulas through normalization.

#include <optional>
#include <span>
#include <stdexcept>
#include <variant>
#include <vector>

#include "addrand/formula.hpp"
#include "addrand/normalize.hpp"
#include "addrand/oracle.hpp"

namespace addrand {

enum class Verdict { Inconsistent, Finite, Infinite };

std::string_view to_string(Verdict v);

struct Classification {
  Verdict verdict = Verdict::Inconsistent;
  /// Finite only: the complete solution set, increasing.
  std::vector<Int> solutions;
  /// Finite only: the boundary element that trapped the solutions (absent
  /// when an equality atom pinned x).
  std::optional<Int> witness_k;
  /// Infinite only.
  std::optional<Conditionality> conditionality;
  /// Set by classify_conjunction.
  std::optional<bool> compatible;
  /// Number of normalization branches behind the verdict.
  std::size_t branches = 1;
  /// Whether chi was evaluated and held, per branch.
  std::vector<bool> chi;
  /// Square-free only: chi held but the negative terms cannot all be
  /// non-square-free outside their zeros.
  bool negative_obstruction = false;

  friend bool operator==(const Classification&, const Classification&) = default;
};

Classification classify_primary(const PrimaryFormula& f, const RandomnessOracle& o);

Classification classify_conjunction(std::span<const PrimaryFormula> fs, const RandomnessOracle& o);

/// Outcome of equality atoms that pin x to a single value.
struct PinnedSolutions {
  /// False when the equalities have no common integer solution.
  bool solvable = false;
  /// The pinned value when the rest of the formula holds there.
  std::vector<Int> solutions;
};

/// Either the formula with its (vacuous) equalities removed, or the pin.
using EqualityResolution = std::variant<BasicFormula, PinnedSolutions>;

/// Pins x through the equality atoms, if there are any; evaluates the rest of
/// the formula at the pinned value.
EqualityResolution resolve_equalities(const BasicFormula& f, const RandomnessOracle& o);

/// Whether the formula has any x at all: normalize, classify each branch and
/// carry finite solution sets back through the branch substitutions.
Classification decide_exists_basic(const BasicFormula& f, const RandomnessOracle& o,
                                   const NormalizeOptions& options = {});

}  // namespace addrand
