#pragma once

// CSV output helpers: 9-significant-digit, locale-independent numeric
// formatting and '#'-prefixed header comments.

#include <cstdint>
#include <cstdio>
#include <ostream>
#include <string>
#include <vector>

namespace otns {

// %.9g via snprintf; the process stays in the "C" locale so the decimal
// separator is always '.'.
inline std::string format_sig9(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return std::string(buf);
}

inline std::string format_int(std::int64_t v) {
  char buf[24];
  std::snprintf(buf, sizeof buf, "%lld", static_cast<long long>(v));
  return std::string(buf);
}

class CsvWriter {
 public:
  explicit CsvWriter(std::ostream& out) : out_(out) {}

  void comment(const std::string& line) { out_ << "# " << line << "\n"; }

  void row(const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out_ << ',';
      out_ << cells[i];
    }
    out_ << "\n";
  }

 private:
  std::ostream& out_;
};

}  // namespace otns
