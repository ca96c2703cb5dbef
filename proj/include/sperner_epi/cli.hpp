#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace sepi::cli {

/// Exit codes shared by every subcommand.
enum ExitCode : int {
	kSuccess = 0,
	kCounterexample = 1,
	kUsageError = 2,
	kBudgetRefused = 3,
};

/// Environment variable consulted for the default --seed.
inline constexpr const char* kSeedEnvVar = "SPERNER_EPI_SEED";

/// Runs the command line `args` (without the program name). Results go to
/// `out` unless --output names a file; diagnostics go to `err`; "-" as an input
/// path reads `in`.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace sepi::cli
