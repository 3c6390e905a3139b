#include <iostream>

#include "surfknot/cli.hpp"

int main(int argc, char** argv) {
  const auto result = surfknot::cli::run({argv + 1, argv + argc});
  std::cout << result.stdout_payload;
  std::cerr << result.stderr_payload;
  return result.exit_code;
}
