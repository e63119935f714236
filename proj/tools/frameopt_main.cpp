#include <iostream>

#include "frameopt/cli/commands.hpp"

int main(int argc, char** argv) {
  return frameopt::cli::run_cli(argc, argv, std::cout, std::cerr);
}
