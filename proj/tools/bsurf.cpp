// bsurf command-line entry point.
#include <iostream>

#include "bsurf/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return bsurf::run(args, std::cout, std::cerr);
}
