#pragma once

#include <string>

#include "mubg/manifest.hpp"

namespace mubg {

enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,
  kExitParse = 2,
  kExitComputation = 3,
  kExitVerification = 4,
};

struct TaskOutput {
  std::string report;
  int exit_code = kExitOk;
};

FormalGroupLaw build_fgl(const Manifest& m, int degree);

// Runs one manifest. Engine failures propagate as mubg::Error; a failed
// verification returns kExitVerification with the full report.
TaskOutput run_task(const Manifest& m, unsigned threads = 0);

}  // namespace mubg
