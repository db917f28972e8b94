#include <iostream>
#include <string>
#include <vector>

#include "caustics/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return caustics::run_cli(args, std::cout, std::cerr);
}
