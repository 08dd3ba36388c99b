#pragma once

#include <iosfwd>

namespace rhombi::cli {

/// Exit codes of the rhombikit tool.
enum ExitCode : int {
  kOk = 0,
  kValidationError = 1,
  kNoPath = 2,
  kBudgetExhausted = 3,
  kIoError = 4,
};

/// Runs the command line `argv` and returns its exit code.
int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace rhombi::cli
