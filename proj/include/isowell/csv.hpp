// csv.hpp
// Minimal RFC-4180-style CSV output: "\n" line endings, double-quote
// escaping, floating-point fields at 17 significant digits for exact
// round-trips.

#pragma once

#include <cstdio>
#include <fstream>
#include <span>
#include <stdexcept>
#include <string>

namespace isowell {

inline std::string csv_escape(const std::string& field) {
  if (field.find_first_of(",\"\n\r") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

inline std::string format_g17(double value) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

class CsvWriter {
 public:
  explicit CsvWriter(const std::string& path)
      : out_(path, std::ios::binary | std::ios::trunc) {
    if (!out_) throw std::runtime_error("cannot open output file: " + path);
  }

  void row(std::span<const std::string> fields) {
    for (size_t i = 0; i < fields.size(); ++i) {
      if (i) out_ << ',';
      out_ << csv_escape(fields[i]);
    }
    out_ << '\n';
    if (!out_) throw std::runtime_error("write failure");
  }

  void row(std::initializer_list<std::string> fields) {
    row(std::span<const std::string>(fields.begin(), fields.size()));
  }

 private:
  std::ofstream out_;
};

}  // namespace isowell
