#include <iostream>
#include <string>
#include <vector>

#include "hama/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return hama::cli::run(args, std::cout, std::cerr);
}
