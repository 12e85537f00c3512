#include <iostream>
#include <string>
#include <vector>

#include "parcoh/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return parcoh::run(args, std::cout, std::cerr);
}
