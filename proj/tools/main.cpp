#include <iostream>

#include "cli.hpp"

int main(int argc, char** argv) {
  return treebraid::cli::run(argc, argv, std::cout, std::cerr);
}
