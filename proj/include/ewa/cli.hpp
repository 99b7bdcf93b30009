#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ewa::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;  ///< numerical failure or failed verification
inline constexpr int kExitUsage = 2;    ///< bad flag or out-of-range parameter

/// Runs one command. `args` excludes the program name. Results go to `out`
/// unless --out names a file; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ewa::cli
