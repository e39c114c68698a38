#pragma once

#include <string_view>
#include <vector>

namespace hugperch::detail {

inline std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

/// Trimmed pieces; empty pieces are dropped unless `keep_empty`.
inline std::vector<std::string_view> split(std::string_view s, char sep, bool keep_empty = false) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    auto piece = s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start);
    if (!keep_empty) piece = trim(piece);
    if (keep_empty || !piece.empty()) out.push_back(piece);
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

}  // namespace hugperch::detail
