#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace atm::cli {

enum ExitCode : int {
  kSuccess = 0,
  kUsageError = 1,
  kBudgetExceeded = 2,
  kVerificationFailed = 3,
};

/// Runs one command line (args[0] is the program name), writing to the
/// given streams. Returns the process exit status.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace atm::cli
