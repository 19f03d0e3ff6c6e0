#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace apf::cli {

/// Process exit codes.
enum ExitCode : int {
  kSuccess = 0,
  kGoalNotReached = 2,
  kInvalidInput = 3,
  kInternalError = 4,
};

/// Entry point for `apf plan|field|compare|scenarios`. The one-line summary
/// goes to `out`, diagnostics to `err`.
int run(int argc, char** argv, std::ostream& out, std::ostream& err);
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace apf::cli
