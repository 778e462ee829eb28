#include <iostream>

#include "expgm/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return expgm::run(args, std::cout, std::cerr);
}
