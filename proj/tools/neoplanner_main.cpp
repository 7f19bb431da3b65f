#include <iostream>

#include "neoplanner/cli.hpp"

int main(int argc, char** argv) {
  return neoplanner::run_cli(argc, argv, std::cout, std::cerr);
}
