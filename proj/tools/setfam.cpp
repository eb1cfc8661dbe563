#include <iostream>

#include "setfam/cli.hpp"

int main(int argc, char** argv) {
  return setfam::run_cli(argc, argv, std::cout, std::cerr);
}
