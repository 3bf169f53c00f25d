#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace almostconv::cli {

/// Exit codes: 0 converges (or clean audit), 1 diverges (or violations found),
/// 2 inconclusive, 3 for any usage or input error.
enum ExitCode : int { kConverges = 0, kDiverges = 1, kInconclusive = 2, kError = 3 };

/// Runs the tool on argv-style arguments (args[0] is the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace almostconv::cli
