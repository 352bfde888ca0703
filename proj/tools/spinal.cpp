#include <iostream>

#include "spinal/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return spinal::run_cli(args, std::cout, std::cerr);
}
