#include <iostream>

#include "bcrk/io.hpp"

int main(int argc, char** argv) {
  return bcrk::run_cli(argc, argv, std::cout, std::cerr);
}
