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

#include "python_lexer.hpp"

#include <array>
#include <limits>

#include "autodoc/source_model.hpp"

namespace autodoc::python {

namespace {

constexpr auto kNpos = std::numeric_limits<std::size_t>::max();

constexpr std::array<std::string_view, 3> kThreeCharOps{"**=", "//=", "..."};
constexpr std::array<std::string_view, 21> kTwoCharOps{
    "->", "**", "//", "==", "!=", "<=", ">=", ":=", "+=", "-=", "*=",
    "/=", "%=", "&=", "|=", "^=", "@=", "<<", ">>", "<>", "~="};

auto is_ident_start(unsigned char c) -> bool {
  return c == '_' || (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
         c >= 0x80;
}

auto is_ident_char(unsigned char c) -> bool {
  return is_ident_start(c) || (c >= '0' && c <= '9');
}

auto is_digit(unsigned char c) -> bool { return c >= '0' && c <= '9'; }

auto is_string_prefix_char(char c) -> bool {
  switch (c) {
    case 'r': case 'R': case 'b': case 'B':
    case 'u': case 'U': case 'f': case 'F':
      return true;
    default:
      return false;
  }
}

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_{text} {}

  auto run() -> std::vector<LogicalLine> {
    auto const n = text_.size();
    while (pos_ < n) {
      auto const c = static_cast<unsigned char>(text_[pos_]);
      if (c == '#') {
        while (pos_ < n && text_[pos_] != '\n') ++pos_;
      } else if (c == '\\' && pos_ + 1 < n &&
                 (text_[pos_ + 1] == '\n' ||
                  (text_[pos_ + 1] == '\r' && pos_ + 2 < n &&
                   text_[pos_ + 2] == '\n'))) {
        pos_ += text_[pos_ + 1] == '\n' ? 2 : 3;
        phys_start_ = pos_;
      } else if (c == '\n') {
        ++pos_;
        phys_start_ = pos_;
        if (depth_ == 0) finish_line();
      } else if (c == ' ' || c == '\t' || c == '\f' || c == '\r') {
        ++pos_;
      } else if (auto const prefix = string_prefix_len(); prefix != kNpos) {
        push(lex_string(pos_, prefix));
      } else if (is_ident_start(c)) {
        auto const begin = pos_;
        while (pos_ < n && is_ident_char(static_cast<unsigned char>(text_[pos_])))
          ++pos_;
        push(Token{TokenKind::kName, begin, pos_});
      } else if (is_digit(c) ||
                 (c == '.' && pos_ + 1 < n &&
                  is_digit(static_cast<unsigned char>(text_[pos_ + 1])))) {
        push(lex_number());
      } else {
        push(lex_op());
      }
    }
    if (depth_ > 0) {
      throw ParseError("unclosed bracket at end of file", open_bracket_);
    }
    finish_line();
    return std::move(lines_);
  }

 private:
  // Returns the prefix length if a string literal starts at pos_.
  auto string_prefix_len() const -> std::size_t {
    auto const n = text_.size();
    std::size_t k = 0;
    while (k < 2 && pos_ + k < n && is_string_prefix_char(text_[pos_ + k])) ++k;
    for (std::size_t len = 0; len <= k; ++len) {
      if (pos_ + len < n && (text_[pos_ + len] == '"' || text_[pos_ + len] == '\'')) {
        if (len > 0 && pos_ > 0 &&
            is_ident_char(static_cast<unsigned char>(text_[pos_ - 1]))) {
          return kNpos;
        }
        return len;
      }
    }
    return kNpos;
  }

  auto lex_string(std::size_t begin, std::size_t prefix_len) -> Token {
    auto const n = text_.size();
    Token tok{TokenKind::kString, begin, begin};
    tok.prefix_len = prefix_len;
    for (std::size_t i = 0; i < prefix_len; ++i) {
      auto const p = text_[begin + i];
      if (p == 'b' || p == 'B') tok.is_bytes = true;
      if (p == 'f' || p == 'F') tok.is_format = true;
    }
    auto i = begin + prefix_len;
    auto const quote = text_[i];
    bool const triple =
        i + 2 < n && text_[i + 1] == quote && text_[i + 2] == quote;
    tok.quote_len = triple ? 3 : 1;
    i += tok.quote_len;
    while (true) {
      if (i >= n) {
        if (triple) throw ParseError("unterminated triple-quoted string", begin);
        break;  // resynchronize at end of input
      }
      auto const ch = text_[i];
      if (ch == '\\') {
        i += 2;
        continue;
      }
      if (!triple && ch == '\n') break;  // unterminated single-line string
      if (tok.is_format && ch == '{') {
        if (i + 1 < n && text_[i + 1] == '{') {
          i += 2;
          continue;
        }
        i = skip_format_field(i + 1, triple);
        continue;
      }
      if (ch == quote) {
        if (!triple) {
          ++i;
          break;
        }
        if (i + 2 < n && text_[i + 1] == quote && text_[i + 2] == quote) {
          i += 3;
          break;
        }
      }
      ++i;
    }
    tok.end = std::min(i, n);
    pos_ = tok.end;
    return tok;
  }

  // Skips a replacement field of an f-string; `i` is just past the `{`.
  auto skip_format_field(std::size_t i, bool triple) -> std::size_t {
    auto const n = text_.size();
    int depth = 1;
    while (i < n && depth > 0) {
      auto const ch = text_[i];
      if (ch == '\n' && !triple) return i;
      if (ch == '{') {
        ++depth;
        ++i;
      } else if (ch == '}') {
        --depth;
        ++i;
      } else if (ch == '"' || ch == '\'') {
        auto const saved = pos_;
        pos_ = i;
        auto const inner = lex_string(i, 0);
        pos_ = saved;
        i = inner.end;
      } else {
        ++i;
      }
    }
    return i;
  }

  auto lex_number() -> Token {
    auto const n = text_.size();
    auto const begin = pos_;
    while (pos_ < n) {
      auto const c = static_cast<unsigned char>(text_[pos_]);
      if (is_ident_char(c) || c == '.') {
        ++pos_;
      } else if ((c == '+' || c == '-') && pos_ > begin &&
                 (text_[pos_ - 1] == 'e' || text_[pos_ - 1] == 'E') &&
                 !(text_.size() > begin + 1 && text_[begin] == '0' &&
                   (text_[begin + 1] == 'x' || text_[begin + 1] == 'X'))) {
        ++pos_;
      } else {
        break;
      }
    }
    return Token{TokenKind::kNumber, begin, pos_};
  }

  auto lex_op() -> Token {
    auto const rest = text_.substr(pos_);
    std::size_t len = 1;
    for (auto op : kThreeCharOps) {
      if (rest.starts_with(op)) len = 3;
    }
    if (len == 1) {
      for (auto op : kTwoCharOps) {
        if (rest.starts_with(op)) len = 2;
      }
    }
    if (len == 1) {
      auto const c = text_[pos_];
      if (c == '(' || c == '[' || c == '{') {
        if (depth_ == 0) open_bracket_ = pos_;
        ++depth_;
      } else if ((c == ')' || c == ']' || c == '}') && depth_ > 0) {
        --depth_;
      }
    }
    Token tok{TokenKind::kOp, pos_, pos_ + len};
    pos_ += len;
    return tok;
  }

  void push(Token tok) {
    if (current_.tokens.empty()) {
      current_.line_start = phys_start_;
      current_.indent = text_.substr(phys_start_, tok.begin - phys_start_);
      std::size_t width = 0;
      for (auto ch : current_.indent) {
        if (ch == '\t') {
          width = (width / 8 + 1) * 8;
        } else if (ch == '\f') {
          width = 0;
        } else {
          ++width;
        }
      }
      current_.indent_width = width;
    }
    current_.end = tok.end;
    current_.tokens.push_back(tok);
  }

  void finish_line() {
    if (!current_.tokens.empty()) lines_.push_back(std::move(current_));
    current_ = LogicalLine{};
  }

  std::string_view text_;
  std::size_t pos_{0};
  std::size_t phys_start_{0};
  int depth_{0};
  std::size_t open_bracket_{0};
  LogicalLine current_;
  std::vector<LogicalLine> lines_;
};

}  // namespace

auto lex(std::string_view text) -> std::vector<LogicalLine> {
  return Lexer{text}.run();
}

auto find_top_level_colon(std::string_view text,
                          std::vector<Token> const& tokens, std::size_t from)
    -> std::size_t {
  int depth = 0;
  for (auto i = from; i < tokens.size(); ++i) {
    auto const& tok = tokens[i];
    if (tok.kind != TokenKind::kOp) continue;
    auto const op = token_text(text, tok);
    if (op == "(" || op == "[" || op == "{") {
      ++depth;
    } else if (op == ")" || op == "]" || op == "}") {
      depth = depth > 0 ? depth - 1 : 0;
    } else if (op == ":" && depth == 0) {
      return i;
    }
  }
  return kNpos;
}

}  // namespace autodoc::python
