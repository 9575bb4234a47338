#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace fracproc::cli {

/// Exit codes shared by every subcommand.
enum ExitCode : int {
  kOk = 0,
  kFailure = 1,
  kUsage = 2,
  kNumeric = 3,
  kPrecision = 4,
};

/// Environment variable consulted for the default seed.
inline constexpr const char* kSeedEnv = "FRACPROC_SEED";

/// Runs the command line `args` (without the program name). Tables go to
/// `out` unless --output is given; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace fracproc::cli
