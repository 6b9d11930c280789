#pragma once

// Text form of formulas.
//
//   formula := "true" | clause ("&" clause)*
//   clause  := ["!"] pred | term "=" int ["mod" nat]
//   pred    := "P" ["_" nat] "(" term ")"
//   term    := [int ["*"]] "x" [("+"|"-") nat] | ["-"] "x" ... | int
//
// Whitespace is ignored. `term = int` without `mod` is an equality atom.
// The mixed grammar replaces "P" by the symbols "Pr" and "SF" and admits no
// congruences.

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

#include "addrand/formula.hpp"

namespace addrand {

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t position, const std::string& message);
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

/// Raised when Pr/SF symbols reach a single-predicate entry point.
class MixedPredicateError : public ParseError {
 public:
  using ParseError::ParseError;
};

/// Predicate terms come back canonicalized through symmetry; constant terms
/// are kept for later folding.
BasicFormula parse_formula(std::string_view text);

/// Parses and requires a primary formula (no congruences, index 1 only).
PrimaryFormula parse_primary(std::string_view text);

MixedConjunction parse_mixed(std::string_view text);

std::string render(const Term& t);
std::string render(const PredicateAtom& a);
std::string render(const CongruenceAtom& c);
std::string render(const EqualityAtom& e);
std::string render(const BasicFormula& f);
std::string render(const PrimaryFormula& f);
std::string render(const MixedConjunction& f);

}  // namespace addrand
