#include <iostream>
#include <string>
#include <vector>

#include "zipfkit/cli.hpp"

int main(int argc, char** argv) {
  std::ios::sync_with_stdio(false);
  const std::vector<std::string> args(argv, argv + argc);
  return zipfkit::cli::run(args, std::cin, std::cout, std::cerr);
}
