#include <iostream>
#include <string>
#include <vector>

#include "pontryagin/cli.hpp"

int main(int argc, char** argv) {
  const std::vector<std::string> args(argv + 1, argv + argc);
  return pontryagin::cli::run_command(args, std::cout, std::cerr);
}
