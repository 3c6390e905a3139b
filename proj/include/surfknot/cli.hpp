#pragma once

#include <string>
#include <vector>

namespace surfknot::cli {

struct CommandResult {
  int exit_code = 0;
  std::string stdout_payload;
  std::string stderr_payload;
};

/// Runs one command line; `args` excludes the program name.
/// Exit codes: 0 success, 1 domain error, 2 usage error.
CommandResult run(const std::vector<std::string>& args);

}  // namespace surfknot::cli
