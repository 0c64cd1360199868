#include <iostream>
#include <string>
#include <vector>

#include "multislit/harness/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return multislit::harness::run_cli(args, std::cout, std::cerr);
}
