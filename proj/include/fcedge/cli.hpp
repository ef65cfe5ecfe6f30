#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace fcedge {

inline constexpr const char* kToolName = "fcedge";
inline constexpr const char* kToolVersion = "1.0.0";

/// Process exit statuses.
enum ExitStatus : int {
  kExitOk = 0,
  kExitCheckFailed = 1,
  kExitUsage = 2,
  kExitNumerical = 3,
};

/// Parses args (without the program name) and runs exactly one command.
/// Results go to `out` unless --out names a file; diagnostics go to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace fcedge
