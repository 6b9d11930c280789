#pragma once

// The acceptance criteria as runnable checks, shared by the acceptance test
// binary and `addrand selftest`.

#include <functional>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "addrand/arith.hpp"
#include "addrand/formula.hpp"
#include "addrand/parallel.hpp"

namespace addrand {

struct AcceptanceConfig {
  unsigned workers = default_workers();
  /// Smaller samples and windows, for a fast smoke run.
  bool quick = false;
  /// Criterion 9 reruns 1-8 with 1, 4 and 8 workers.
  bool check_determinism = true;
  /// The CRT under test in criterion 6; replaceable for fault injection.
  std::function<std::optional<CongruenceClass>(std::span<const CongruenceClass>)> crt =
      [](std::span<const CongruenceClass> cs) { return addrand::crt(cs); };
};

struct CriterionResult {
  int id = 0;
  std::string title;
  bool passed = false;
  std::string detail;
  /// Hash of the criterion's JSON output, for the determinism check.
  std::string digest;
  double seconds = 0;
};

/// Criteria 1-8.
CriterionResult run_criterion(int id, const AcceptanceConfig& config);

/// Every criterion in order; one line per criterion goes to `log` as it finishes.
std::vector<CriterionResult> run_acceptance(const AcceptanceConfig& config, std::ostream* log = nullptr);

std::string format_result(const CriterionResult& r);

/// Random single-variable basic formula with at most four atoms,
/// coefficients |m| <= 6, indices <= 6 and constants |c| <= 50.
BasicFormula random_basic_formula(std::uint64_t seed);

}  // namespace addrand
