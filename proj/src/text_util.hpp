// Copyright 2026 The Autodoc Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace autodoc::text {

inline auto is_space(char c) -> bool {
  return c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '\f' || c == '\v';
}

inline auto trim_left(std::string_view s) -> std::string_view {
  std::size_t i = 0;
  while (i < s.size() && is_space(s[i])) ++i;
  return s.substr(i);
}

inline auto trim_right(std::string_view s) -> std::string_view {
  auto n = s.size();
  while (n > 0 && is_space(s[n - 1])) --n;
  return s.substr(0, n);
}

inline auto trim(std::string_view s) -> std::string_view {
  return trim_right(trim_left(s));
}

inline auto is_blank(std::string_view s) -> bool { return trim(s).empty(); }

// Splits on '\n'. An empty input has no lines; a trailing newline yields a
// final empty line.
inline auto split_lines(std::string_view s) -> std::vector<std::string_view> {
  std::vector<std::string_view> out;
  if (s.empty()) return out;
  std::size_t start = 0;
  while (true) {
    auto const nl = s.find('\n', start);
    if (nl == std::string_view::npos) {
      out.push_back(s.substr(start));
      break;
    }
    out.push_back(s.substr(start, nl - start));
    start = nl + 1;
  }
  return out;
}

inline auto starts_with_word(std::string_view s, std::string_view word) -> bool {
  if (!s.starts_with(word)) return false;
  if (s.size() == word.size()) return true;
  auto const c = static_cast<unsigned char>(s[word.size()]);
  return !(c == '_' || (c >= '0' && c <= '9') || (c >= 'a' && c <= 'z') ||
           (c >= 'A' && c <= 'Z'));
}

}  // namespace autodoc::text
