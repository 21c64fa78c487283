#include <iostream>

#include "polybundle/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return polybundle::run_cli(std::move(args), std::cin, std::cout, std::cerr);
}
