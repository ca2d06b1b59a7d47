#include <iostream>
#include <string>
#include <vector>

#include "pmd/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return pmd::cli::run(args, std::cout, std::cerr);
}
