#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ephemera::cli {

enum ExitCode : int { kOk = 0, kUsage = 1, kRuntime = 2 };

/// Runs the command line `args` (args[0] is the program name). Normal output
/// goes to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ephemera::cli
