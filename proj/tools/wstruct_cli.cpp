#include <iostream>

#include "wstruct/cli.hpp"

int main(int argc, char** argv) {
  const std::vector<std::string> args(argv + 1, argv + argc);
  const wstruct::CliResult r = wstruct::run_cli(args);
  std::cout << r.out;
  std::cerr << r.err;
  return r.exit_code;
}
