#pragma once

#include <cstdint>
#include <cstdio>
#include <ostream>
#include <string>
#include <type_traits>
#include <vector>

namespace ratnerlab {

// Doubles with 12 significant digits; integers and strings verbatim.
inline std::string csv_field(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}
inline std::string csv_field(const std::string& s) { return s; }
inline std::string csv_field(const char* s) { return s; }
template <class I>
  requires std::is_integral_v<I>
std::string csv_field(I v) {
  return std::to_string(v);
}

// "#config: ..." comment line, then the header row, then data rows.
class CsvWriter {
 public:
  CsvWriter(std::ostream& out, const std::string& config, const std::vector<std::string>& header)
      : out_(out) {
    out_ << "#config: " << config << '\n';
    write(header);
  }

  template <class... Ts>
  void row(const Ts&... values) {
    std::vector<std::string> fields{csv_field(values)...};
    write(fields);
  }
  void write(const std::vector<std::string>& fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) out_ << (i ? "," : "") << fields[i];
    out_ << '\n';
  }

 private:
  std::ostream& out_;
};

}  // namespace ratnerlab
