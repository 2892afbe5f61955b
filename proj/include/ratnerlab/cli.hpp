#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace ratnerlab::cli {

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kValidationError = 2;
inline constexpr int kNumericalError = 3;

// Parses argv (argv[0] is the program name) and runs one subcommand. CSV goes
// to `out` unless --out names a file; usage and diagnostics go to `err`.
int run(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err);

}  // namespace ratnerlab::cli
