#include <vector>

#include "tripdc/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return tripdc::run_cli(args);
}
