#include <iostream>
#include <string>
#include <vector>

#include "coxglue/cli.hpp"

int main(int argc, char** argv) {
  const std::vector<std::string> args(argv + 1, argv + argc);
  return coxglue::run_cli(args, std::cout);
}
