#include <algorithm>
#include <cstring>
#include <iostream>

#include "addrand/acceptance.hpp"

int main(int argc, char** argv) {
  addrand::AcceptanceConfig config;
  for (int i = 1; i < argc; ++i)
    if (std::strcmp(argv[i], "--quick") == 0) config.quick = true;
  auto results = addrand::run_acceptance(config, &std::cout);
  bool ok = std::all_of(results.begin(), results.end(), [](const auto& r) { return r.passed; });
  std::cout << (ok ? "acceptance: all criteria passed" : "acceptance: FAILED") << std::endl;
  return ok ? 0 : 1;
}
