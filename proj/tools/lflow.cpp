#include "cli_app.hpp"

#include <iostream>
#include <string>
#include <vector>

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  auto outcome = lflow::cli::run(args);
  std::cout << outcome.out;
  return outcome.code;
}
