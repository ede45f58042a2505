#pragma once

#include <iosfwd>

namespace blowup {

/// Exit codes of the command-line tool.
enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,
  kExitParse = 2,
  kExitPrecondition = 3,
  kExitNotConverged = 4,
};

/// Parses argv, runs one subcommand and writes its report to `out`.
/// Diagnostics go to `err`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Cross-module consistency checks; returns the number of failures.
int run_selftest(std::ostream& out);

}  // namespace blowup
