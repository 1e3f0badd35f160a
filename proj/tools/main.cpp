#include <iostream>
#include <string>
#include <vector>

#include "ramgrs/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return ramgrs::run_cli(args, std::cout, std::cerr);
}
