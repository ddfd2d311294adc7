#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace lemni {

inline constexpr int kExitOk = 0;
inline constexpr int kExitVerifyFailed = 1;
inline constexpr int kExitUsage = 2;

/// Runs the command line `args` (args[0] is the program name). Holds no
/// global state, so it can be called repeatedly.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace lemni
