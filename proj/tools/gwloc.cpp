#include <iostream>
#include <string>
#include <vector>

#include "gwloc/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return gwloc::run_cli(args, std::cout, std::cerr);
}
