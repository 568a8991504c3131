#include <iostream>

#include "geocover/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return geocover::run_cli(args, std::cout, std::cerr);
}
