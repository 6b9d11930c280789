#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "addrand/arith.hpp"
#include "addrand/parallel.hpp"

namespace addrand::cli {

enum ExitCode : int { Ok = 0, Usage = 1, Refuted = 2, ResourceCap = 3 };

struct CommandConfig {
  std::string command;  // normalize, decide, verify, chi, axioms, mixed, selftest
  std::string predicate = "squarefree";
  std::string formula;
  std::vector<Int> bounds{100'000};
  std::uint64_t seed = 0;
  double density = 0.5;
  unsigned workers = default_workers();
  bool json = false;
  bool timing = false;
  std::size_t branch_cap = 100'000;
  std::size_t samples = 200;
  Int max_sieve = 100'000'000;
  bool quick = false;
  std::string inject_fault;  // "crt" breaks the CRT seen by selftest
};

int run(const CommandConfig& config, std::ostream& out, std::ostream& err);

/// Parses `args` (without the program name) and runs the command.
int main_with_args(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// "100000", "1e6", "2.5e5". Throws std::invalid_argument.
Int parse_bound(const std::string& text);
/// "0.3" or "1/3". Throws std::invalid_argument.
double parse_density(const std::string& text);

}  // namespace addrand::cli
