#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qlp::cli {

enum ExitCode : int {
    kOk = 0,
    kFailure = 1,     ///< unexpected internal error
    kUsage = 2,       ///< bad flags or flag combinations
    kDomain = 3,      ///< values out of range, dimension mismatches
    kConfig = 4,      ///< unreadable or invalid configuration / output path
};

/// Environment variable naming the default sensor configuration file.
inline constexpr const char *kConfigEnvVar = "QLP_CONFIG";

/// Runs the command line `args` (args[0] is the program name).
int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

} // namespace qlp::cli
