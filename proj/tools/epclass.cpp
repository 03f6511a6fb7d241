#include <iostream>

#include "epclass/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return epclass::run_cli(args, std::cout, std::cerr);
}
