#include <iostream>
#include <string>
#include <vector>

#include "branchlab_cli.hpp"

int main(int argc, char** argv) {
  const std::vector<std::string> args(argv + 1, argv + argc);
  const auto r = branchlab::cli::run_cli(args);
  std::cout << r.out;
  std::cerr << r.err;
  return r.exit_code;
}
