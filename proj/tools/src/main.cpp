#include <iostream>

#include "ymh/cli.hpp"

int main(int argc, char** argv) {
  return ymh::cli::run(std::vector<std::string>(argv, argv + argc), std::cout, std::cerr);
}
