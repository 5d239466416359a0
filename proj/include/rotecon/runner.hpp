#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace rotecon {

// Exit codes of the command-line front end.
enum ExitCode : int {
  kExitOk = 0,
  kExitInternal = 1,    // unexpected failure
  kExitUsage = 2,       // bad flags or subcommand
  kExitIo = 3,          // unreadable scenario or unwritable output
  kExitParse = 4,       // scenario is not valid JSON / wrong field shapes
  kExitValidation = 5,  // scenario violates a documented invariant
  kExitComputation = 6, // the requested computation is undefined or infeasible
};

// Runs one CLI invocation. `args` excludes the program name. Summaries and
// help go to `out`, diagnostics to `err`; CSV series go to the --out
// directory. Returns an ExitCode value.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace rotecon
