#include <iostream>
#include <string>
#include <vector>

#include "hpc/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return hpc::cli::run(args, std::cout, std::cerr);
}
