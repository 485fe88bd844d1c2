#pragma once

#include <initializer_list>
#include <string>
#include <string_view>

namespace partsmm {

/// RFC 4180 quoting: fields containing ',', '"' or a newline are quoted.
inline std::string csv_field(std::string_view s) {
  if (s.find_first_of(",\"\n\r") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

inline std::string csv_row(std::initializer_list<std::string_view> fields) {
  std::string out;
  bool first = true;
  for (auto f : fields) {
    if (!first) out += ',';
    first = false;
    out += csv_field(f);
  }
  out += '\n';
  return out;
}

}  // namespace partsmm
