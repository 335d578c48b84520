#include <unistd.h>

#include <iostream>

#include "cli.hpp"

int main(int argc, char** argv) {
  std::ios::sync_with_stdio(false);
  std::vector<std::string> args(argv, argv + argc);
  return anita::cli::run(args, std::cin, std::cout, std::cerr, isatty(STDOUT_FILENO) != 0);
}
