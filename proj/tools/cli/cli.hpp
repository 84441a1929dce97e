#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace aca::cli {

/// Exit codes of `run`.
enum ExitCode : int {
    kSuccess = 0,   // command succeeded or the checked statement held
    kFailure = 1,   // a verified failure or an inconclusive run
    kUsage = 2,     // bad flags, unparsable input, or unmet preconditions
};

/// Runs one command. `args` excludes the program name; reports go to `out`,
/// diagnostics and the usage synopsis to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace aca::cli
