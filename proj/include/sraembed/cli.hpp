#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace sraembed {

/// Exit codes of the command line tool.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1; // invalid input or failed hypothesis
inline constexpr int kExitUsage = 2;

/// Runs the tool on `args` (args[0] is the program name). Results go to `out`
/// or to the files named by -o/--ledger; diagnostics are single lines on `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace sraembed
