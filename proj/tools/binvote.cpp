#include <iostream>
#include <string>
#include <vector>

#include "binvote/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return binvote::cli::run_cli(args, std::cout, std::cerr);
}
