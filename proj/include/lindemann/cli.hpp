#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace lindemann {

/// Process exit codes of the command-line tool.
enum ExitCode : int {
  kExitOk = 0,
  kExitCheckFailed = 1,
  kExitUsage = 2,
  kExitInternal = 3,
};

/// Runs the command-line tool. `args` excludes the program name. Output that
/// is not redirected with --out goes to `out`; diagnostics go to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace lindemann
