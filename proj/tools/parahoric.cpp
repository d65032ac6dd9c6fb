#include <iostream>

#include "parahoric/cli.hpp"

int main(int argc, char** argv) {
  return parahoric::cli::run(std::vector<std::string>(argv, argv + argc), std::cout, std::cerr);
}
