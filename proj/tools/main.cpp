#include <iostream>
#include <string>
#include <vector>

#include "f2dyn/cli.hpp"

int main(int argc, char** argv) {
  const std::vector<std::string> args(argv + 1, argv + argc);
  const f2dyn::RunResult r = f2dyn::run_command_line(args);
  std::cout << r.out;
  std::cerr << r.err;
  return r.exit_code;
}
