#include <iostream>

#include "addrand/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return addrand::cli::main_with_args(args, std::cout, std::cerr);
}
