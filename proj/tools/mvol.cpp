#include <iostream>
#include <string>
#include <vector>

#include "mvol/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return mvol::cli::run(std::move(args), std::cout, std::cerr);
}
