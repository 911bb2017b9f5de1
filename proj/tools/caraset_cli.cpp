#include <iostream>

#include "caraset/cli.hpp"

int main(int argc, char** argv) {
  return caraset::cli::main_entry(argc, argv, std::cout, std::cerr);
}
