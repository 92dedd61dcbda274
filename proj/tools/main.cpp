#include <iostream>
#include <string>
#include <vector>

#include "robinsym/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return robinsym::cli::run(args, std::cout, std::cerr);
}
