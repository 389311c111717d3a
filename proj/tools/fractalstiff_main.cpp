#include <iostream>

#include "fractalstiff/cli.hpp"

int main(int argc, char** argv) {
  return fractalstiff::cli::run(argc, argv, std::cout, std::cerr);
}
