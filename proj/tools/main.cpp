#include <iostream>
#include <string>
#include <vector>

#include "ratnerlab/cli.hpp"

int main(int argc, char** argv) {
  return ratnerlab::cli::run(std::vector<std::string>(argv, argv + argc), std::cout, std::cerr);
}
