#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace epclass {

enum ExitCode : int { kExitOk = 0, kExitUsage = 1, kExitCritical = 2, kExitUnquantized = 3 };

/// Runs the command-line front end on `args` (without the program name).
/// Primary results go to `out`, diagnostics to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace epclass
