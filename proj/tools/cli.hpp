#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace twopoint::cli {

/// Exit codes of run().
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;   // failed check or numerical error
inline constexpr int kExitUsage = 2;     // bad arguments

/// args excludes the program name. Results go to --out files, or to out when
/// no --out is given; diagnostics go to err.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace twopoint::cli
