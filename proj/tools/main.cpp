#include <string>
#include <vector>

#include "cli.h"

int main(int argc, char** argv) {
  return epic::cli_dispatch(std::vector<std::string>(argv, argv + argc));
}
