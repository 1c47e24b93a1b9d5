#include <iostream>

#include "lj/cli.hpp"

int main(int argc, char** argv) {
  return lj::run_cli(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
