#include <cstdlib>
#include <iostream>

#include "flagparam/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  std::optional<std::string> tol;
  if (const char* env = std::getenv("FLAGPARAM_TOL")) tol = env;
  return flagparam::cli::run(args, std::cin, std::cout, std::cerr, tol);
}
