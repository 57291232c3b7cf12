#pragma once

#include <charconv>
#include <string>
#include <string_view>
#include <vector>

#include "hilbx/errors.hpp"

namespace hilbx::detail {

/// Splits on '\n'. A single trailing newline does not produce an empty line;
/// '\r' is rejected because every format here is LF-only.
inline std::vector<std::string_view> split_lines(std::string_view text, std::string_view what) {
  if (text.find('\r') != std::string_view::npos) throw FormatError(std::string(what) + ": CR line endings");
  std::vector<std::string_view> lines;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    if (nl == std::string_view::npos) {
      lines.push_back(text);
      break;
    }
    lines.push_back(text.substr(0, nl));
    text.remove_prefix(nl + 1);
  }
  return lines;
}

inline std::size_t parse_size(std::string_view s, std::string_view what) {
  std::size_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size())
    throw FormatError(std::string(what) + ": expected a decimal number, got '" + std::string(s) + "'");
  return v;
}

/// Value of "key=value", requiring the exact key.
inline std::string_view field(std::string_view line, std::string_view key, std::string_view what) {
  if (line.size() <= key.size() || line.substr(0, key.size()) != key || line[key.size()] != '=')
    throw FormatError(std::string(what) + ": expected '" + std::string(key) + "=...', got '" + std::string(line) + "'");
  return line.substr(key.size() + 1);
}

}  // namespace hilbx::detail
