#pragma once

#include <string_view>
#include <vector>

namespace ratnerlab {

// Real-number token: an optional sign followed by factors joined by '*' or
// '/'. A factor is a decimal literal, sqrtN (N a positive integer, e.g.
// sqrt2), sqrt(x), exp(x) or pi. Examples: "-sqrt2/2", "3*sqrt5", "exp(-2)".
// Throws invalid-input on anything else.
double parse_real(std::string_view token);

// Comma-separated list of parse_real tokens.
std::vector<double> parse_real_list(std::string_view text);

}  // namespace ratnerlab
