#include <cstdlib>
#include <iostream>

#include "klab/cli.hpp"

int main(int argc, char** argv) {
  return klab::cli::dispatch(argc, argv, std::cout, std::cerr, [](const char* name) { return std::getenv(name); });
}
