#include <iostream>
#include <string>
#include <vector>

#include "oscsys/cli.hpp"

int main(int argc, char** argv) {
  return oscsys::run_cli(std::vector<std::string>(argv, argv + argc), std::cout, std::cerr);
}
