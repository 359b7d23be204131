#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace lemni::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitDomain = 1;
inline constexpr int kExitUsage = 2;

/// Runs one invocation; args excludes the program name. Diagnostics go to
/// err, results to out (or to --out files).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace lemni::cli
