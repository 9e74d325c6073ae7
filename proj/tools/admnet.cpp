#include <iostream>

#include "admnet/cli.hpp"

int main(int argc, char** argv) {
  return admnet::run_cli(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
