#include <iostream>
#include <string>
#include <vector>

#include "nilhom/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return nilhom::run_main(args, std::cout, std::cerr);
}
