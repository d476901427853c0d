#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace hotspots::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 2,
  kExitInfeasible = 3,
  kExitAccuracy = 4,
  kExitVBoundFailed = 5,
};

/// Runs the command line `args` (program name excluded), writing results to
/// `out` and diagnostics to `err`. Returns the process exit status.
int run(std::span<const std::string> args, std::ostream& out, std::ostream& err);

}  // namespace hotspots::cli
