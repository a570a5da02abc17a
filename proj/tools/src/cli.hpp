#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace meandric::tools {

inline constexpr int kExitOk = 0;
inline constexpr int kExitVerifyFailed = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitGuard = 3;

/// Entry point of the meandric tool; args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace meandric::tools
