#include <iostream>
#include <string>
#include <vector>

#include "vistrack/cli.hpp"

int main(int argc, char** argv) {
  return vistrack::cli_main(std::vector<std::string>(argv, argv + argc), std::cout, std::cerr);
}
