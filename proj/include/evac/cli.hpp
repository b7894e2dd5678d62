#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace evac::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitVerifyFailed = 3;

/// Runs one command. `args` excludes the program name. Summaries go to
/// `out`, diagnostics to `err`; CSV goes to the file named by --out.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int run(int argc, char** argv);

}  // namespace evac::cli
