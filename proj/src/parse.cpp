#include "ratnerlab/parse.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <numbers>
#include <string>

#include "ratnerlab/errors.hpp"

namespace ratnerlab {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

[[noreturn]] void bad(std::string_view token) {
  fail(ErrorKind::InvalidInput, "cannot parse number '" + std::string(token) + "'");
}

double parse_literal(std::string_view s, std::string_view whole) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) bad(whole);
  return v;
}

// Argument of f(...) when s has that shape.
bool call_argument(std::string_view s, std::string_view name, std::string_view& arg) {
  if (s.size() < name.size() + 2 || s.substr(0, name.size()) != name || s[name.size()] != '(' ||
      s.back() != ')')
    return false;
  arg = s.substr(name.size() + 1, s.size() - name.size() - 2);
  return true;
}

double parse_factor(std::string_view s, std::string_view whole) {
  s = trim(s);
  if (s.empty()) bad(whole);
  std::string_view arg;
  if (call_argument(s, "sqrt", arg)) {
    const double x = parse_real(arg);
    if (x < 0.0) bad(whole);
    return std::sqrt(x);
  }
  if (call_argument(s, "exp", arg)) return std::exp(parse_real(arg));
  if (s == "pi") return std::numbers::pi;
  if (s.substr(0, 4) == "sqrt") {
    const double x = parse_literal(s.substr(4), whole);
    if (x <= 0.0 || x != std::floor(x)) bad(whole);
    return std::sqrt(x);
  }
  return parse_literal(s, whole);
}

}  // namespace

double parse_real(std::string_view token) {
  std::string_view s = trim(token);
  double sign = 1.0;
  while (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    if (s.front() == '-') sign = -sign;
    s.remove_prefix(1);
  }
  if (s.empty()) bad(token);

  // Split on top-level '*' and '/'.
  double value = 1.0;
  char op = '*';
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= s.size(); ++i) {
    const char c = i < s.size() ? s[i] : '\0';
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (depth == 0 && (c == '*' || c == '/' || c == '\0')) {
      const double f = parse_factor(s.substr(start, i - start), token);
      value = op == '*' ? value * f : value / f;
      op = c;
      start = i + 1;
    }
  }
  if (depth != 0 || !std::isfinite(value)) bad(token);
  return sign * value;
}

std::vector<double> parse_real_list(std::string_view text) {
  std::vector<double> out;
  std::size_t start = 0;
  int depth = 0;
  for (std::size_t i = 0; i <= text.size(); ++i) {
    const char c = i < text.size() ? text[i] : ',';
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (c == ',' && depth == 0) {
      out.push_back(parse_real(text.substr(start, i - start)));
      start = i + 1;
    }
  }
  return out;
}

}  // namespace ratnerlab
