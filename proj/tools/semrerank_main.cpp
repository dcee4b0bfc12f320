#include <iostream>
#include <string>
#include <vector>

#include "semrerank/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return semrerank::run(args, std::cout, std::cerr);
}
