#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace momentlab {

inline constexpr int kExitOk = 0;
inline constexpr int kExitVerifyFailed = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitQuality = 3;

/// Runs the command line `args` (without the program name). Output that a
/// command produces goes to `out` unless --out names a file; diagnostics go to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace momentlab
