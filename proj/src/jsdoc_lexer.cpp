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

#include "jsdoc_lexer.hpp"

#include <array>
#include <limits>
#include <set>
#include <string>

#include "autodoc/source_model.hpp"

namespace autodoc::jsdoc {

namespace {

constexpr auto kNpos = std::numeric_limits<std::size_t>::max();

constexpr std::array<std::string_view, 4> kThreeCharPuncts{"===", "!==",
                                                           "...", "**="};
constexpr std::array<std::string_view, 16> kTwoCharPuncts{
    "=>", "==", "!=", "<=", ">=", "&&", "||", "??", "?.",
    "++", "--", "+=", "-=", "*=", "::", "->"};

auto is_ident_start(unsigned char c) -> bool {
  return c == '_' || c == '$' || (c >= 'a' && c <= 'z') ||
         (c >= 'A' && c <= 'Z') || c >= 0x80;
}

auto is_ident_char(unsigned char c) -> bool {
  return is_ident_start(c) || (c >= '0' && c <= '9');
}

auto is_digit(unsigned char c) -> bool { return c >= '0' && c <= '9'; }

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_{text} {}

  auto run() -> Lexed {
    auto const n = text_.size();
    while (pos_ < n) {
      auto const c = static_cast<unsigned char>(text_[pos_]);
      auto const next = pos_ + 1 < n ? text_[pos_ + 1] : '\0';
      if (c == '\n') {
        newline_ = true;
        ++pos_;
      } else if (c == ' ' || c == '\t' || c == '\r' || c == '\f' || c == '\v') {
        ++pos_;
      } else if (c == '/' && next == '/') {
        while (pos_ < n && text_[pos_] != '\n') ++pos_;
      } else if (c == '/' && next == '*') {
        lex_block_comment();
      } else if (c == '"' || c == '\'') {
        push(TokenKind::kString, pos_, lex_string(pos_));
      } else if (c == '`') {
        push(TokenKind::kTemplate, pos_, skip_template(pos_));
      } else if (is_ident_start(c)) {
        auto const begin = pos_;
        while (pos_ < n && is_ident_char(static_cast<unsigned char>(text_[pos_])))
          ++pos_;
        push(TokenKind::kIdent, begin, pos_);
      } else if (is_digit(c) ||
                 (c == '.' && is_digit(static_cast<unsigned char>(next)))) {
        auto const begin = pos_;
        while (pos_ < n) {
          auto const d = static_cast<unsigned char>(text_[pos_]);
          if (is_ident_char(d) || d == '.') {
            ++pos_;
          } else if ((d == '+' || d == '-') &&
                     (text_[pos_ - 1] == 'e' || text_[pos_ - 1] == 'E')) {
            ++pos_;
          } else {
            break;
          }
        }
        push(TokenKind::kNumber, begin, pos_);
      } else if (c == '/' && regex_allowed()) {
        auto const begin = pos_;
        auto const end = lex_regex(pos_);
        if (end == kNpos) {
          push(TokenKind::kPunct, begin, begin + 1);
        } else {
          push(TokenKind::kRegex, begin, end);
        }
      } else {
        lex_punct();
      }
    }
    if (!open_.empty()) {
      throw ParseError("unclosed bracket at end of file",
                       out_.tokens[open_.back()].begin);
    }
    return std::move(out_);
  }

 private:
  void push(TokenKind kind, std::size_t begin, std::size_t end) {
    out_.tokens.push_back(Token{kind, begin, end, newline_});
    out_.partner.push_back(kNpos);
    newline_ = false;
    pos_ = end;
  }

  void lex_block_comment() {
    auto const close = text_.find("*/", pos_ + 2);
    if (close == std::string_view::npos) {
      throw ParseError("unterminated block comment", pos_);
    }
    auto const end = close + 2;
    bool const is_doc = pos_ + 2 < text_.size() && text_[pos_ + 2] == '*' &&
                        close > pos_ + 2 &&
                        !(pos_ + 3 < text_.size() && text_[pos_ + 3] == '*');
    if (is_doc) out_.docs.push_back(DocComment{pos_, end});
    if (text_.substr(pos_, end - pos_).find('\n') != std::string_view::npos) {
      newline_ = true;
    }
    pos_ = end;
  }

  // Returns the end offset. Unterminated strings resynchronize at newline.
  auto lex_string(std::size_t begin) const -> std::size_t {
    auto const n = text_.size();
    auto const quote = text_[begin];
    if (quote == '"' && text_.substr(begin, 3) == "\"\"\"") {
      // Java text block: `"""` followed by a line break.
      auto i = begin + 3;
      while (i < n && (text_[i] == ' ' || text_[i] == '\t' || text_[i] == '\r'))
        ++i;
      if (i < n && text_[i] == '\n') {
        while (i < n) {
          if (text_[i] == '\\') {
            i += 2;
            continue;
          }
          if (text_.substr(i, 3) == "\"\"\"") return i + 3;
          ++i;
        }
        throw ParseError("unterminated text block", begin);
      }
    }
    auto i = begin + 1;
    while (i < n) {
      auto const ch = text_[i];
      if (ch == '\\') {
        i += 2;
        continue;
      }
      if (ch == '\n') return i;
      if (ch == quote) return i + 1;
      ++i;
    }
    return n;
  }

  auto skip_template(std::size_t begin) const -> std::size_t {
    auto const n = text_.size();
    auto i = begin + 1;
    while (i < n) {
      auto const ch = text_[i];
      if (ch == '\\') {
        i += 2;
      } else if (ch == '`') {
        return i + 1;
      } else if (ch == '$' && i + 1 < n && text_[i + 1] == '{') {
        i = skip_interpolation(i + 2);
      } else {
        ++i;
      }
    }
    throw ParseError("unterminated template literal", begin);
  }

  // `i` is just past `${`; returns the offset after the matching `}`.
  auto skip_interpolation(std::size_t i) const -> std::size_t {
    auto const n = text_.size();
    int depth = 1;
    while (i < n) {
      auto const ch = text_[i];
      if (ch == '{') {
        ++depth;
        ++i;
      } else if (ch == '}') {
        if (--depth == 0) return i + 1;
        ++i;
      } else if (ch == '"' || ch == '\'') {
        i = lex_string(i);
      } else if (ch == '`') {
        i = skip_template(i);
      } else if (ch == '/' && i + 1 < n && text_[i + 1] == '*') {
        auto const close = text_.find("*/", i + 2);
        if (close == std::string_view::npos) break;
        i = close + 2;
      } else if (ch == '/' && i + 1 < n && text_[i + 1] == '/') {
        while (i < n && text_[i] != '\n') ++i;
      } else {
        ++i;
      }
    }
    throw ParseError("unterminated template interpolation", i);
  }

  auto regex_allowed() const -> bool {
    static std::set<std::string_view> const kKeywords{
        "return", "typeof", "instanceof", "in",   "of",    "new",  "delete",
        "void",   "throw",  "case",       "do",   "else",  "yield", "await"};
    if (out_.tokens.empty()) return true;
    auto const& prev = out_.tokens.back();
    auto const prev_text = text_of(text_, prev);
    switch (prev.kind) {
      case TokenKind::kIdent:
        return kKeywords.contains(prev_text);
      case TokenKind::kNumber:
      case TokenKind::kString:
      case TokenKind::kTemplate:
      case TokenKind::kRegex:
        return false;
      case TokenKind::kPunct:
        return prev_text != ")" && prev_text != "]" && prev_text != "++" &&
               prev_text != "--";
    }
    return false;
  }

  auto lex_regex(std::size_t begin) const -> std::size_t {
    auto const n = text_.size();
    auto i = begin + 1;
    bool in_class = false;
    while (i < n) {
      auto const ch = text_[i];
      if (ch == '\n') return kNpos;
      if (ch == '\\') {
        i += 2;
        continue;
      }
      if (ch == '[') in_class = true;
      if (ch == ']') in_class = false;
      if (ch == '/' && !in_class) {
        ++i;
        while (i < n && is_ident_char(static_cast<unsigned char>(text_[i]))) ++i;
        return i;
      }
      ++i;
    }
    return kNpos;
  }

  void lex_punct() {
    auto const rest = text_.substr(pos_);
    std::size_t len = 1;
    for (auto p : kThreeCharPuncts) {
      if (rest.starts_with(p)) len = 3;
    }
    if (len == 1) {
      for (auto p : kTwoCharPuncts) {
        if (rest.starts_with(p)) len = 2;
      }
    }
    auto const c = text_[pos_];
    auto const index = out_.tokens.size();
    push(TokenKind::kPunct, pos_, pos_ + len);
    if (len != 1) return;
    if (c == '(' || c == '[' || c == '{') {
      open_.push_back(index);
    } else if (c == ')' || c == ']' || c == '}') {
      auto const want = c == ')' ? '(' : c == ']' ? '[' : '{';
      // Unmatched closers are ignored; mismatched ones close the nearest
      // matching opener so one stray bracket cannot derail the whole file.
      for (auto it = open_.rbegin(); it != open_.rend(); ++it) {
        if (text_[out_.tokens[*it].begin] == want) {
          out_.partner[*it] = index;
          out_.partner[index] = *it;
          open_.erase(std::next(it).base(), open_.end());
          break;
        }
      }
    }
  }

  std::string_view text_;
  std::size_t pos_{0};
  bool newline_{false};
  std::vector<std::size_t> open_;
  Lexed out_;
};

}  // namespace

auto lex(std::string_view text) -> Lexed { return Lexer{text}.run(); }

}  // namespace autodoc::jsdoc
