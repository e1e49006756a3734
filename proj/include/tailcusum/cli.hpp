#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace tailcusum {

/// Exit statuses of the command-line tool.
inline constexpr int kExitNoChange = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitChange = 2;

/// Environment variable consulted for the default seed.
inline constexpr const char* kSeedEnvVar = "TAILCUSUM_SEED";

/// Runs the command line `args` (args[0] is the program name).
int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

} // namespace tailcusum
