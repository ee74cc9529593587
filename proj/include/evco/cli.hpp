#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace evco {

/// Exit codes of the command-line front end.
enum ExitCode : int {
  kExitOk = 0,
  kExitCheckFailed = 1,
  kExitParseError = 2,
  kExitDimensionMismatch = 3,
  kExitUnsupported = 4,
};

/// Runs `evco <args...>` (args excludes the program name).
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace evco
