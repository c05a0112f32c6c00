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

// Minimal unified-diff applier used as an oracle for render_diff. It is
// written against the format, not against the generator: hunks are applied
// strictly, with every context and removed line checked.

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace reference {

inline auto split_keep_newlines(std::string_view text) -> std::vector<std::string> {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (pos < text.size()) {
    auto nl = text.find('\n', pos);
    auto const end = nl == std::string_view::npos ? text.size() : nl + 1;
    out.emplace_back(text.substr(pos, end - pos));
    pos = end;
  }
  return out;
}

// "-12,3" or "+4" -> (start, count)
inline auto parse_range(std::string_view s) -> std::pair<std::size_t, std::size_t> {
  s.remove_prefix(1);
  auto const comma = s.find(',');
  auto const start = std::stoul(std::string{s.substr(0, comma)});
  auto const count = comma == std::string_view::npos ? 1 : std::stoul(std::string{s.substr(comma + 1)});
  return {start, count};
}

inline auto apply_unified(std::string_view old_text, std::string_view diff) -> std::string {
  if (diff.empty()) return std::string{old_text};
  auto const old_lines = split_keep_newlines(old_text);
  auto const lines = split_keep_newlines(diff);
  if (lines.size() < 2 || !lines[0].starts_with("--- ") || !lines[1].starts_with("+++ ")) {
    throw std::runtime_error("missing file headers");
  }
  std::vector<std::string> out;
  std::size_t cursor = 0;  // next unread old line
  std::size_t i = 2;
  while (i < lines.size()) {
    auto const& h = lines[i];
    if (!h.starts_with("@@ ")) throw std::runtime_error("expected hunk header: " + h);
    auto const sp1 = h.find(' ', 3);
    auto const sp2 = h.find(' ', sp1 + 1);
    auto const [old_start, old_count] = parse_range(std::string_view{h}.substr(3, sp1 - 3));
    auto const [new_start, new_count] = parse_range(std::string_view{h}.substr(sp1 + 1, sp2 - sp1 - 1));
    (void)new_start;
    auto const first = old_count == 0 ? old_start : old_start - 1;
    if (first < cursor || first > old_lines.size()) throw std::runtime_error("hunk out of order");
    for (; cursor < first; ++cursor) out.push_back(old_lines[cursor]);
    std::size_t seen_old = 0;
    std::size_t seen_new = 0;
    ++i;
    while (i < lines.size() && !lines[i].starts_with("@@ ")) {
      auto line = lines[i];
      ++i;
      auto const mark = line[0];
      auto body = line.substr(1);
      // A following marker strips the newline of this line.
      if (i < lines.size() && lines[i].starts_with("\\ ")) {
        if (!body.empty() && body.back() == '\n') body.pop_back();
        ++i;
      }
      if (mark == ' ' || mark == '-') {
        if (cursor >= old_lines.size() || old_lines[cursor] != body) {
          throw std::runtime_error("context mismatch at old line " + std::to_string(cursor + 1));
        }
        ++cursor;
        ++seen_old;
        if (mark == ' ') {
          out.push_back(body);
          ++seen_new;
        }
      } else if (mark == '+') {
        out.push_back(body);
        ++seen_new;
      } else {
        throw std::runtime_error("bad hunk line: " + line);
      }
    }
    if (seen_old != old_count || seen_new != new_count) {
      throw std::runtime_error("hunk counts do not match header " + h);
    }
  }
  for (; cursor < old_lines.size(); ++cursor) out.push_back(old_lines[cursor]);
  std::string joined;
  for (auto const& l : out) joined += l;
  return joined;
}

}  // namespace reference
