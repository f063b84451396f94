#pragma once

#include <ostream>

namespace sae::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,     // bad flags, bad config
  kExitData = 2,      // unreadable or invalid cohort/model files
  kExitInternal = 3,  // anything else
};

// Entry point behind the `sae` binary. Reports go to `out`, diagnostics to
// `err`. Output files are written only after the command has fully succeeded.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace sae::cli
