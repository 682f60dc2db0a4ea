#include <iostream>

#include "symkernel/cli.hpp"

int main(int argc, char** argv) {
  return symkernel::cli::main_entry(argc, argv, std::cout, std::cerr);
}
