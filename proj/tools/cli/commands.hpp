#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace basins::cli {

enum ExitCode : int { kExitOk = 0, kExitRuntime = 1, kExitUsage = 2 };

/// Runs the command line `args` (without the program name). Normal output goes
/// to `out`, diagnostics to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace basins::cli
