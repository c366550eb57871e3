#include <iostream>
#include <string>
#include <vector>

#include "semimeander/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return semimeander::run_cli(args, std::cout, std::cerr);
}
