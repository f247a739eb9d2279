#include <iostream>
#include <string>
#include <vector>

#include "ddvv/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return ddvv::run_cli(args, std::cout, std::cerr);
}
