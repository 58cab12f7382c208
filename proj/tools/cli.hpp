#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ppforge::cli {

inline constexpr int kExitPermutation = 0;
inline constexpr int kExitNotPermutation = 1;
inline constexpr int kExitDisagreement = 2;
inline constexpr int kExitUsage = 64;
inline constexpr int kExitHypotheses = 65;

/// Runs the command line (args excludes the program name). All output goes
/// to the given streams; returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ppforge::cli
