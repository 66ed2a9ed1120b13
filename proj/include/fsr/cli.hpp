#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace fsr::cli {

enum ExitCode : int {
  kSuccess = 0,        // success, or a true verdict
  kVerdictFalse = 1,   // not a member, not equivalent, violation found, failed check
  kUsageError = 2,     // bad arguments, malformed input, domain errors
  kResourceError = 3,  // caps or budgets exceeded
  kInternalError = 4,  // a result failed its own re-verification
};

/// Runs one command line (without the program name) and returns its exit code.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace fsr::cli
