#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace trisim::cli {

/// Exit codes shared by every subcommand.
enum Exit : int { kOk = 0, kMismatch = 1, kUsage = 2, kNonConvergent = 3 };

/// Runs the command line `args` (without the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace trisim::cli
