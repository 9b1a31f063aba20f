#include "oruga/cli.hpp"

#include <iostream>

int main(int argc, char** argv) {
  return oruga::cli::run(argc, argv, std::cout, std::cerr);
}
