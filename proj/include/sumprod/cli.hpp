#pragma once

#include <iosfwd>

namespace sumprod {

/// Exit codes of the command-line tool.
enum ExitCode : int {
  kExitOk = 0,
  kExitInternal = 1,
  kExitParse = 2,
  kExitBudget = 3,
  kExitEmptyStar = 4,
  kExitAssertFailed = 5,
  kExitUnknownClaim = 6,
};

/// Full command-line entry point; data goes to `out`, diagnostics to `err`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace sumprod
