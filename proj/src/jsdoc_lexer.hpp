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

// Tokenizer shared by JavaScript, TypeScript and Java sources. It only needs
// to be precise about strings, templates, regex literals and comments; every
// other construct is a flat stream of identifiers and punctuation.
namespace autodoc::jsdoc {

enum class TokenKind { kIdent, kNumber, kString, kTemplate, kRegex, kPunct };

struct Token {
  TokenKind kind{TokenKind::kPunct};
  std::size_t begin{};
  std::size_t end{};
  bool newline_before{false};
};

struct DocComment {
  std::size_t begin{};
  std::size_t end{};
};

struct Lexed {
  std::vector<Token> tokens;
  std::vector<DocComment> docs;
  // For every bracket token, the index of its partner (or npos).
  std::vector<std::size_t> partner;
};

/// Throws ParseError on an unterminated comment or template, or on unclosed
/// brackets at end of input.
[[nodiscard]] auto lex(std::string_view text) -> Lexed;

[[nodiscard]] inline auto text_of(std::string_view text, Token const& tok)
    -> std::string_view {
  return text.substr(tok.begin, tok.end - tok.begin);
}

}  // namespace autodoc::jsdoc
