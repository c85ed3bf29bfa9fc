#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace glc::cli {

/// Exit statuses of the command-line tool.
enum Exit : int { kOk = 0, kCheckFailed = 1, kUsage = 2, kCapExceeded = 3 };

/// Runs one invocation. `args` excludes the program name. Reports go to
/// `out` (or --out), diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace glc::cli
