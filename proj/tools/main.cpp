#include <iostream>
#include <string>
#include <vector>

#include "alpha_luroth/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return alpha_luroth::cli::run(args, std::cout, std::cerr);
}
