#include <iostream>

#include "crshadow/cli.hpp"

int main(int argc, char** argv) {
  return crshadow::run_cli(argc, argv, std::cout, std::cerr);
}
