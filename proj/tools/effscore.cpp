#include <iostream>

#include "effscore/cli.hpp"

int main(int argc, char** argv) {
  return effscore::cli::run(argc, argv, std::cin, std::cout, std::cerr);
}
