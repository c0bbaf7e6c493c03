#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace rgm::cli {

enum ExitCode : int { kOk = 0, kUsage = 1, kNumerical = 2 };

/// Runs the command line `args` (args[0] is the program name) and returns
/// the process exit code. Diagnostics go to `err`, summaries to `out`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace rgm::cli
