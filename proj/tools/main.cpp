#include <iostream>

#include "stgray/cli.hpp"

int main(int argc, char** argv) {
  return stgray::run_cli(argc, argv, std::cout, std::cerr);
}
