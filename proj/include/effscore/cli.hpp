#pragma once

#include <iosfwd>

namespace effscore::cli {

/// Process exit codes of the command-line front end.
enum ExitCode : int {
  kSuccess = 0,
  kCheckFailed = 1,
  kParseError = 2,
  kCoverageError = 3,
  kValidationError = 4,
};

/// Runs one command line. Reports go to `out` (or the --out file), diagnostics
/// to `err`; `in` backs `--config -`.
int run(int argc, const char* const* argv, std::istream& in, std::ostream& out,
        std::ostream& err);

}  // namespace effscore::cli
