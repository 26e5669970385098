#pragma once

#include <iosfwd>

namespace qdcat::cli {

enum ExitCode : int {
  kOk = 0,
  kVerifyFailed = 1,
  kInvalidScenario = 2,
  kResourceExceeded = 3,
  kNumericalFailure = 4,
};

/// Entire command-line program; main() only forwards to this.
int run_app(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace qdcat::cli
