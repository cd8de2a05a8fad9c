#include <iostream>
#include <string>
#include <vector>

#include "vast/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return vast::run_cli(args, std::cout, std::cerr);
}
