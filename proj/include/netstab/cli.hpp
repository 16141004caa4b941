#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace netstab {

/// Exit status of the command-line tool.
enum ExitCode : int { kSuccess = 0, kRuntimeFailure = 1, kUsageError = 2 };

/// Runs `netstab <args...>`; args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace netstab
