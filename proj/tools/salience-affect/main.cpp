#include <unistd.h>

#include <iostream>

#include "commands.hpp"

int main(int argc, char** argv) {
  return salaffect::cli::run(argc, argv, std::cout, std::cerr, isatty(STDERR_FILENO) != 0);
}
