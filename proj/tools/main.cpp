#include <iostream>
#include <string>
#include <vector>

#include "cvss/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return cvss::cli::run(args, std::cout, std::cerr);
}
