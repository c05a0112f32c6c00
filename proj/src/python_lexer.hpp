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

#include <cstddef>
#include <string_view>
#include <vector>

namespace autodoc::python {

enum class TokenKind { kName, kNumber, kString, kOp };

struct Token {
  TokenKind kind{TokenKind::kOp};
  std::size_t begin{};
  std::size_t end{};
  // Strings only: length of the prefix letters and of the quote run.
  std::size_t prefix_len{};
  std::size_t quote_len{};
  bool is_bytes{false};
  bool is_format{false};
};

/// A logical line: one statement-level line after joining bracketed and
/// backslash continuations. Blank and comment-only lines produce none.
struct LogicalLine {
  std::size_t line_start{};  // start of the physical line of the first token
  std::size_t end{};         // end of the last token
  std::string_view indent;
  std::size_t indent_width{};
  std::vector<Token> tokens;
};

/// Throws ParseError on an unterminated triple-quoted string or bracket.
[[nodiscard]] auto lex(std::string_view text) -> std::vector<LogicalLine>;

[[nodiscard]] inline auto token_text(std::string_view text, Token const& tok)
    -> std::string_view {
  return text.substr(tok.begin, tok.end - tok.begin);
}

[[nodiscard]] inline auto is_op(std::string_view text, Token const& tok,
                                std::string_view op) -> bool {
  return tok.kind == TokenKind::kOp && token_text(text, tok) == op;
}

[[nodiscard]] inline auto is_name(std::string_view text, Token const& tok,
                                  std::string_view name) -> bool {
  return tok.kind == TokenKind::kName && token_text(text, tok) == name;
}

/// Index of the first `:` at bracket depth zero at or after `from`, or npos.
[[nodiscard]] auto find_top_level_colon(std::string_view text,
                                        std::vector<Token> const& tokens,
                                        std::size_t from) -> std::size_t;

}  // namespace autodoc::python
