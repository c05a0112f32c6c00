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

#include <algorithm>
#include <filesystem>
#include <limits>
#include <set>

#include "adapters.hpp"
#include "python_lexer.hpp"

namespace autodoc::detail {

namespace {

using python::LogicalLine;
using python::Token;
using python::TokenKind;

constexpr auto kNpos = std::numeric_limits<std::size_t>::max();

auto docstring_token(std::string_view text, LogicalLine const& line,
                     std::size_t index) -> bool {
  if (index >= line.tokens.size()) return false;
  auto const& tok = line.tokens[index];
  if (tok.kind != TokenKind::kString || tok.is_bytes || tok.is_format) {
    return false;
  }
  if (index + 1 < line.tokens.size() &&
      !python::is_op(text, line.tokens[index + 1], ";")) {
    return false;
  }
  // Only well-terminated literals can be re-encoded exactly.
  auto const open_len = tok.prefix_len + tok.quote_len;
  if (tok.end - tok.begin < open_len + tok.quote_len) return false;
  auto const quotes = text.substr(tok.begin + tok.prefix_len, tok.quote_len);
  return text.substr(tok.end - tok.quote_len, tok.quote_len) == quotes;
}

auto make_existing(std::string_view text, Token const& tok,
                   std::string indent) -> ExistingDoc {
  auto const open_len = tok.prefix_len + tok.quote_len;
  ExistingDoc doc;
  doc.span = ByteRange{tok.begin, tok.end};
  doc.delimiter = std::string{text.substr(tok.begin, open_len)};
  doc.raw_text = std::string{
      text.substr(tok.begin + open_len, tok.end - tok.begin - open_len - tok.quote_len)};
  doc.indent = std::move(indent);
  return doc;
}

auto is_header_line(std::string_view text, LogicalLine const& line) -> bool {
  auto const& toks = line.tokens;
  std::size_t t = 0;
  if (toks.size() > 1 && python::is_name(text, toks[0], "async") &&
      python::is_name(text, toks[1], "def")) {
    t = 1;
  }
  return python::is_name(text, toks[t], "def") ||
         python::is_name(text, toks[t], "class");
}

auto is_coding_line(std::string_view line) -> bool {
  auto const first = line.find_first_not_of(" \t\f");
  if (first == std::string_view::npos || line[first] != '#') return false;
  return line.find("coding:") != std::string_view::npos ||
         line.find("coding=") != std::string_view::npos;
}

auto module_slot(SourceUnit const& unit, std::vector<LogicalLine> const& lines)
    -> DocSlot {
  auto const text = unit.content();
  if (!lines.empty() && lines.front().indent_width == 0 &&
      docstring_token(text, lines.front(), 0)) {
    return DocSlot{make_existing(text, lines.front().tokens.front(), "")};
  }
  auto const& offsets = unit.line_offsets();
  auto physical_line = [&](std::size_t k) {
    auto const begin = offsets[k];
    auto const end = k + 1 < offsets.size() ? offsets[k + 1] : text.size();
    return text.substr(begin, end - begin);
  };
  std::size_t k = 0;
  if (!text.empty() && physical_line(0).starts_with("#!")) k = 1;
  while (k < 2 && k < offsets.size() && is_coding_line(physical_line(k))) ++k;
  auto const offset = k < offsets.size() ? offsets[k] : text.size();
  bool const whole_line = offset == 0 || text[offset - 1] == '\n';
  return DocSlot{InsertionPoint{offset, "", whole_line}};
}

struct OpenEntity {
  std::size_t index;
  std::size_t width;
  bool is_class;
};

auto statement_starts(std::string_view text, LogicalLine const& line)
    -> std::vector<std::size_t> {
  static std::set<std::string_view> const kCompound{
      "if",   "elif", "else",  "for",   "while", "try",  "except",
      "finally", "with", "async", "match", "case"};
  std::vector<std::size_t> starts{0};
  auto const& toks = line.tokens;
  bool const compound =
      toks[0].kind == TokenKind::kName &&
      kCompound.contains(python::token_text(text, toks[0]));
  int depth = 0;
  for (std::size_t i = 0; i < toks.size(); ++i) {
    if (toks[i].kind != TokenKind::kOp) continue;
    auto const op = python::token_text(text, toks[i]);
    if (op == "(" || op == "[" || op == "{") {
      ++depth;
    } else if (op == ")" || op == "]" || op == "}") {
      depth = depth > 0 ? depth - 1 : 0;
    } else if (depth == 0 && (op == ";" || (op == ":" && compound))) {
      if (i + 1 < toks.size()) starts.push_back(i + 1);
    }
  }
  return starts;
}

// Calls `visit(line, start)` for every statement start outside nested
// function and class definitions.
template <typename Visit>
void for_each_statement(std::string_view body, Visit&& visit) {
  auto const lines = python::lex(body);
  auto skip_width = kNpos;
  for (auto const& line : lines) {
    if (skip_width != kNpos) {
      if (line.indent_width > skip_width) continue;
      skip_width = kNpos;
    }
    if (is_header_line(body, line)) {
      skip_width = line.indent_width;
      continue;
    }
    for (auto start : statement_starts(body, line)) {
      if (visit(line, start)) return;
    }
  }
}

}  // namespace

auto parse_python(SourceUnit const& unit) -> std::vector<CodeEntity> {
  auto const text = unit.content();
  auto const lines = python::lex(text);
  std::vector<CodeEntity> entities;

  CodeEntity module;
  module.kind = EntityKind::kModule;
  module.name = std::filesystem::path{unit.path()}.stem().string();
  module.id = unit.path() + ":<module>";
  module.header_span = ByteRange{0, 0};
  module.body_span = ByteRange{0, text.size()};
  module.doc_slot = module_slot(unit, lines);
  entities.push_back(std::move(module));

  std::vector<OpenEntity> stack;
  for (std::size_t li = 0; li < lines.size(); ++li) {
    auto const& line = lines[li];
    while (!stack.empty() && stack.back().width >= line.indent_width) {
      stack.pop_back();
    }
    if (!is_header_line(text, line)) continue;
    auto const& toks = line.tokens;
    std::size_t t = python::is_name(text, toks[0], "async") ? 1 : 0;
    bool const is_class = python::is_name(text, toks[t], "class");
    if (t + 1 >= toks.size() || toks[t + 1].kind != TokenKind::kName) continue;
    if (!is_class &&
        (t + 2 >= toks.size() || !python::is_op(text, toks[t + 2], "("))) {
      continue;
    }
    auto const colon = python::find_top_level_colon(text, toks, t + 2);
    if (colon == kNpos) continue;

    CodeEntity entity;
    entity.name = std::string{python::token_text(text, toks[t + 1])};
    OpenEntity const* parent = stack.empty() ? nullptr : &stack.back();
    if (is_class) {
      entity.kind = EntityKind::kClass;
    } else {
      entity.kind = parent != nullptr && parent->is_class ? EntityKind::kMethod
                                                          : EntityKind::kFunction;
    }
    entity.qualified_name =
        parent != nullptr
            ? entities[parent->index].qualified_name + "." + entity.name
            : entity.name;
    entity.id = unit.path() + ":" + entity.qualified_name;
    entity.header_span = ByteRange{toks[0].begin, toks[colon].end};

    if (colon + 1 < toks.size()) {
      auto indent = std::string{line.indent} + "    ";
      entity.body_span = ByteRange{toks[colon].end, line.end};
      entity.body_indent = indent;
      if (docstring_token(text, line, colon + 1)) {
        entity.doc_slot =
            DocSlot{make_existing(text, toks[colon + 1], std::move(indent))};
      } else {
        entity.doc_slot =
            DocSlot{InsertionPoint{toks[colon].end, std::move(indent), false}};
      }
    } else {
      auto const first = li + 1;
      if (first >= lines.size() ||
          lines[first].indent_width <= line.indent_width) {
        continue;  // header without a body
      }
      auto last = first;
      while (last + 1 < lines.size() &&
             lines[last + 1].indent_width > line.indent_width) {
        ++last;
      }
      auto const& body = lines[first];
      entity.body_span = ByteRange{toks[colon].end, lines[last].end};
      entity.body_indent = std::string{body.indent};
      if (docstring_token(text, body, 0)) {
        entity.doc_slot = DocSlot{
            make_existing(text, body.tokens.front(), std::string{body.indent})};
      } else {
        entity.doc_slot = DocSlot{
            InsertionPoint{body.line_start, std::string{body.indent}, true}};
      }
    }

    if (!is_class) {
      auto const header =
          text.substr(toks[t].begin, toks[colon].end - toks[t].begin);
      try {
        entity.signature = parse_python_signature(header);
      } catch (SignatureParseError const& e) {
        entity.signature_error = e.what();
      } catch (ParseError const& e) {
        entity.signature_error = e.what();
      }
      entity.signature.is_method = entity.kind == EntityKind::kMethod;
    }

    bool const block_body = colon + 1 >= toks.size();
    entities.push_back(std::move(entity));
    if (block_body) {
      stack.push_back(OpenEntity{entities.size() - 1, line.indent_width, is_class});
    }
  }
  return entities;
}

auto parse_python_signature(std::string_view header) -> Signature {
  auto const lines = python::lex(header);
  std::vector<Token> toks;
  for (auto const& line : lines) {
    toks.insert(toks.end(), line.tokens.begin(), line.tokens.end());
  }
  std::size_t t = 0;
  if (!toks.empty() && python::is_name(header, toks[0], "async")) t = 1;
  if (toks.size() < t + 3 || !python::is_name(header, toks[t], "def") ||
      toks[t + 1].kind != TokenKind::kName ||
      !python::is_op(header, toks[t + 2], "(")) {
    throw SignatureParseError("not a function header");
  }
  auto const open = t + 2;
  std::size_t close = kNpos;
  int depth = 0;
  for (auto i = open; i < toks.size(); ++i) {
    if (toks[i].kind != TokenKind::kOp) continue;
    auto const op = python::token_text(header, toks[i]);
    if (op == "(" || op == "[" || op == "{") ++depth;
    if (op == ")" || op == "]" || op == "}") {
      if (--depth == 0) {
        close = i;
        break;
      }
    }
  }
  if (close == kNpos) throw SignatureParseError("unbalanced parameter list");

  auto verbatim = [&](std::size_t first, std::size_t last) {
    return std::string{
        header.substr(toks[first].begin, toks[last].end - toks[first].begin)};
  };

  // Split parameters at top-level commas.
  std::vector<std::pair<std::size_t, std::size_t>> segments;
  std::size_t seg_begin = open + 1;
  depth = 0;
  for (auto i = open + 1; i < close; ++i) {
    if (toks[i].kind != TokenKind::kOp) continue;
    auto const op = python::token_text(header, toks[i]);
    if (op == "(" || op == "[" || op == "{") ++depth;
    if (op == ")" || op == "]" || op == "}") --depth;
    if (op == "," && depth == 0) {
      segments.emplace_back(seg_begin, i);
      seg_begin = i + 1;
    }
  }
  if (seg_begin < close) segments.emplace_back(seg_begin, close);

  Signature sig;
  bool keyword_only = false;
  std::set<std::string> seen;
  int var_positional = 0;
  int var_keyword = 0;
  for (auto [first, last] : segments) {
    if (first == last) throw SignatureParseError("empty parameter");
    if (last - first == 1 && python::is_op(header, toks[first], "/")) continue;
    if (last - first == 1 && python::is_op(header, toks[first], "*")) {
      keyword_only = true;
      continue;
    }
    Param param;
    auto i = first;
    if (python::is_op(header, toks[i], "*")) {
      param.kind = ParamKind::kVarPositional;
      ++var_positional;
      ++i;
    } else if (python::is_op(header, toks[i], "**")) {
      param.kind = ParamKind::kVarKeyword;
      ++var_keyword;
      ++i;
    } else {
      param.kind = keyword_only ? ParamKind::kKeywordOnly : ParamKind::kPositional;
    }
    if (i >= last || toks[i].kind != TokenKind::kName) {
      throw SignatureParseError("expected parameter name");
    }
    param.name = std::string{python::token_text(header, toks[i])};
    ++i;
    if (i < last && python::is_op(header, toks[i], ":")) {
      auto const ann_first = ++i;
      int d = 0;
      while (i < last) {
        if (toks[i].kind == TokenKind::kOp) {
          auto const op = python::token_text(header, toks[i]);
          if (op == "(" || op == "[" || op == "{") ++d;
          if (op == ")" || op == "]" || op == "}") --d;
          if (op == "=" && d == 0) break;
        }
        ++i;
      }
      if (i == ann_first) throw SignatureParseError("empty annotation");
      param.annotation_text = verbatim(ann_first, i - 1);
    }
    if (i < last && python::is_op(header, toks[i], "=")) {
      if (i + 1 >= last) throw SignatureParseError("empty default");
      param.default_text = verbatim(i + 1, last - 1);
      i = last;
    }
    if (i != last) {
      throw SignatureParseError("unexpected token in parameter '" +
                                param.name + "'");
    }
    if (!seen.insert(param.name).second) {
      throw SignatureParseError("duplicate parameter '" + param.name + "'");
    }
    if (param.kind == ParamKind::kVarPositional) keyword_only = true;
    sig.params.push_back(std::move(param));
  }
  if (var_positional > 1 || var_keyword > 1) {
    throw SignatureParseError("repeated variadic parameter");
  }

  if (close + 1 < toks.size() && python::is_op(header, toks[close + 1], "->")) {
    auto const ann_first = close + 2;
    auto const colon = python::find_top_level_colon(header, toks, ann_first);
    auto const ann_end = colon == kNpos ? toks.size() : colon;
    if (ann_end <= ann_first) throw SignatureParseError("empty return annotation");
    sig.returns_annotation = verbatim(ann_first, ann_end - 1);
  }
  return sig;
}

auto python_raises(std::string_view body) -> std::vector<std::string> {
  std::vector<std::string> names;
  for_each_statement(body, [&](LogicalLine const& line, std::size_t s) {
    auto const& toks = line.tokens;
    if (!python::is_name(body, toks[s], "raise")) return false;
    if (s + 1 >= toks.size() || toks[s + 1].kind != TokenKind::kName) {
      return false;
    }
    std::string name{python::token_text(body, toks[s + 1])};
    auto i = s + 2;
    while (i + 1 < toks.size() && python::is_op(body, toks[i], ".") &&
           toks[i + 1].kind == TokenKind::kName) {
      name += ".";
      name += python::token_text(body, toks[i + 1]);
      i += 2;
    }
    if (name == "from") return false;
    if (std::find(names.begin(), names.end(), name) == names.end()) {
      names.push_back(std::move(name));
    }
    return false;
  });
  return names;
}

auto python_returns(std::string_view body) -> bool {
  bool found = false;
  for_each_statement(body, [&](LogicalLine const& line, std::size_t s) {
    auto const& toks = line.tokens;
    if (python::is_name(body, toks[s], "return") && s + 1 < toks.size() &&
        !python::is_op(body, toks[s + 1], ";")) {
      found = true;
    }
    return found;
  });
  return found;
}

}  // namespace autodoc::detail
