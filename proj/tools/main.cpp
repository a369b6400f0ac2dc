#include <iostream>

#include "eqnoeth/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return eqnoeth::dispatch(args, std::cout, std::cerr);
}
