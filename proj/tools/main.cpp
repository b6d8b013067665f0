#include "rkhs/cli.hpp"

#include <iostream>

int main(int argc, char** argv) {
  return rkhs::cli::main_entry(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
