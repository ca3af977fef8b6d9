#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace isolab::cli {

inline constexpr const char* kVersion = "0.1.0";

enum ExitCode : int {
    kOk = 0,
    kUsage = 1,     // bad flags or configuration
    kData = 2,      // unreadable or invalid input
    kInternal = 3,  // invariant violation inside the tool
};

/// Runs one command line (args excludes the program name) and returns the
/// process exit code. Reports go to `out` (or --out), diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace isolab::cli
