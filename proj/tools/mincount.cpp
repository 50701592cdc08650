#include "mincount/cli.hpp"

#include <iostream>

int main(int argc, char **argv) {
  return mincount::cli::main(argc, argv, std::cin, std::cout, std::cerr);
}
