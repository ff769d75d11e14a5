#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace nutdisc::cli {

// Exit codes
inline constexpr int kOk = 0;
inline constexpr int kAssertionFailed = 1;
inline constexpr int kInvalidInput = 2;
inline constexpr int kResource = 3;

/// Runs one command line (args excludes the program name). Data goes to
/// `out` (or the --output file), diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace nutdisc::cli
