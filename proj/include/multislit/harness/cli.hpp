#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace multislit::harness {

enum ExitCode : int {
  kExitOk = 0,
  kExitFailure = 1,
  kExitValidation = 2,
  kExitFraunhofer = 3,
  kExitIo = 4,
};

/// Runs the command line `args` (program name first) and returns the
/// process exit code. Diagnostics go to `err`; stdout-bound tables to `out`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace multislit::harness
