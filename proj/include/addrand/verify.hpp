#pragma once

// Ground truth by brute force: sieved membership windows, exhaustive
// solution scans, audits of verdicts and spot checks of the randomness axioms.

#include <chrono>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "addrand/decide.hpp"
#include "addrand/errors.hpp"
#include "addrand/formula.hpp"
#include "addrand/oracle.hpp"
#include "addrand/parallel.hpp"

namespace addrand {

struct ScanOptions {
  unsigned workers = default_workers();
  /// Largest sieve window; membership beyond it falls back to the oracle.
  Int max_sieve = 100'000'000;
  std::size_t segment_size = std::size_t{1} << 20;
  /// Listed solutions are truncated here; counts stay exact.
  std::size_t solution_cap = 1000;
};

/// Membership of every n with |n| <= bound, stored for n >= 0 only.
class MembershipWindow {
 public:
  MembershipWindow() = default;
  MembershipWindow(Int bound, std::vector<std::uint64_t> words) : bound_(bound), words_(std::move(words)) {}

  Int bound() const { return bound_; }
  bool test(Int n) const {
    std::uint64_t a = n < 0 ? std::uint64_t(0) - static_cast<std::uint64_t>(n) : static_cast<std::uint64_t>(n);
    return (words_[a >> 6] >> (a & 63)) & 1u;
  }

 private:
  Int bound_ = -1;
  std::vector<std::uint64_t> words_;
};

/// Segmented, parallel sieve of [-bound, bound]. Throws ResourceLimitError
/// past options.max_sieve.
MembershipWindow sieve_window(const RandomnessOracle& o, Int bound, const ScanOptions& options = {});

struct ScanResult {
  std::vector<Int> bounds;
  std::vector<std::uint64_t> counts;  // per bound
  std::vector<Int> solutions;         // in [-max bound, max bound], increasing, capped
};

/// Membership through a window where it reaches, the oracle elsewhere.
class MembershipSource {
 public:
  MembershipSource(const RandomnessOracle& o, Int value_bound, const ScanOptions& options);
  bool contains(Int n) const;
  const RandomnessOracle& oracle() const { return *oracle_; }

 private:
  const RandomnessOracle* oracle_;
  MembershipWindow window_;
};

/// Largest |value| any predicate atom of f takes on [-bound, bound].
Int value_bound(const BasicFormula& f, Int bound);

/// Counts solutions of f within each radius of `bounds` (which must be
/// increasing) in one parallel pass.
ScanResult scan(const BasicFormula& f, const MembershipSource& source, std::span<const Int> bounds,
                const ScanOptions& options = {});

struct SolutionCount {
  std::uint64_t count = 0;
  std::vector<Int> window_solutions;
};

SolutionCount count_solutions(const BasicFormula& f, const RandomnessOracle& o, Int bound,
                              const ScanOptions& options = {});
SolutionCount count_solutions(const PrimaryFormula& f, const RandomnessOracle& o, Int bound,
                              const ScanOptions& options = {});

enum class AuditStatus { Confirmed, Refuted, ConjectureRelevantAnomaly };
std::string_view to_string(AuditStatus s);

struct VerificationReport {
  std::string formula;
  std::string oracle;
  Classification verdict;
  std::vector<Int> bounds;
  std::vector<std::uint64_t> counts;
  std::vector<Int> window_solutions;
  AuditStatus status = AuditStatus::Confirmed;
  std::string note;
  std::chrono::milliseconds elapsed{0};
};

/// Decides f, scans every bound, and grades the verdict against the scans.
VerificationReport audit(const BasicFormula& f, const RandomnessOracle& o, std::span<const Int> bounds,
                         const ScanOptions& options = {}, const NormalizeOptions& normalize = {});

struct AxiomCheck {
  std::size_t tested = 0;
  std::size_t passed = 0;
  bool all_passed() const { return tested == passed; }
};

struct AxiomReport {
  std::string oracle;
  std::size_t samples = 0;
  Int bound = 0;
  AxiomCheck p1;  // chi true => a solution in the window
  AxiomCheck p2;  // chi false => the witness modulus is covered by the terms
  AxiomCheck p3;  // D intersected with kZ on the window equals the trapped set
  std::vector<std::string> p1_failures;  // rendered instances, first 20
  AuditStatus status = AuditStatus::Confirmed;
  std::string note;
};

/// Random good-position instances: 1..3 positive and 0..2 negative terms with
/// coefficients in [1, 5] and constants in [-30, 30].
AxiomReport check_axioms(const RandomnessOracle& o, std::size_t samples, Int bound, std::uint64_t seed,
                         const ScanOptions& options = {});

/// Window counts for a prime / square-free conjunction. No verdict.
ScanResult count_mixed(const MixedConjunction& f, std::span<const Int> bounds, const ScanOptions& options = {});

}  // namespace addrand
