#pragma once

#include <ostream>

namespace smallres {

/// Process exit codes of the command-line front end.
enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,
  kExitDomain = 2,
  kExitResource = 3,
  kExitBeyondBound = 4,
  kExitAbsent = 5,
  /// A reproduction check failed or a numerical cross-check did not close.
  kExitIntegrity = 6,
};

/// Runs the front end on argv, writing results to `out` and diagnostics to
/// `err`. Never throws; every failure maps to one ExitCode.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace smallres
