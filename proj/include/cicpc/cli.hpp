#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace cicpc {

inline constexpr const char* kToolVersion = "1.0.0";

/// Exit codes of the command-line front end.
enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,
  kExitMalformed = 2,
  kExitInvalid = 3,
  kExitClassMismatch = 4,
};

/// Runs the CLI on `args` (without the program name).
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cicpc
