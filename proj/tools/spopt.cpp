#include <iostream>
#include <string>
#include <vector>

#include "spopt/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return spopt::cli::run(args, std::cout, std::cerr);
}
