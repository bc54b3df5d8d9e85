#include <vector>

#include "normlab/cli.hpp"

int main(int argc, char** argv) {
  return normlab::run_cli(std::vector<std::string>(argv + 1, argv + argc));
}
