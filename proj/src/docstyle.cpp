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

#include "autodoc/docstyle.hpp"

#include <algorithm>
#include <cctype>
#include <limits>

#include "text_util.hpp"

namespace autodoc {

namespace {

using text::is_blank;
using text::split_lines;
using text::trim;
using text::trim_left;
using text::trim_right;

constexpr auto kNpos = std::numeric_limits<std::size_t>::max();

template <typename T>
auto find_block(std::vector<Block> const& blocks) -> T const* {
  for (auto const& b : blocks) {
    if (auto const* p = std::get_if<T>(&b)) return p;
  }
  return nullptr;
}

template <typename T>
auto find_block(std::vector<Block>& blocks) -> T* {
  for (auto& b : blocks) {
    if (auto* p = std::get_if<T>(&b)) return p;
  }
  return nullptr;
}

auto leading_ws(std::string_view line) -> std::size_t {
  auto const n = line.find_first_not_of(" \t");
  return n == std::string_view::npos ? line.size() : n;
}

auto is_dash_line(std::string_view line) -> bool {
  auto const t = trim(line);
  return t.size() >= 3 && t.find_first_not_of('-') == std::string_view::npos;
}

auto join(std::vector<std::string> const& lines, std::string_view sep)
    -> std::string {
  std::string out;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (i > 0) out += sep;
    out += lines[i];
  }
  return out;
}

// Dedents lines by their common indentation, ignoring blank lines, and trims
// blank lines at the end (and at the front when `trim_front`).
auto dedent(std::vector<std::string> lines, bool trim_front = true)
    -> std::vector<std::string> {
  auto common = kNpos;
  for (auto const& l : lines) {
    if (!is_blank(l)) common = std::min(common, leading_ws(l));
  }
  for (auto& l : lines) {
    l = is_blank(l) ? std::string{} : l.substr(common == kNpos ? 0 : common);
    l = std::string{trim_right(l)};
  }
  while (!lines.empty() && lines.back().empty()) lines.pop_back();
  while (trim_front && !lines.empty() && lines.front().empty()) {
    lines.erase(lines.begin());
  }
  return lines;
}

// Joins a field's first-line text with its dedented continuation lines.
auto field_desc(std::string_view first, std::vector<std::string> cont)
    -> std::string {
  std::vector<std::string> out;
  auto const head = trim(first);
  if (!head.empty()) out.emplace_back(head);
  for (auto& l : dedent(std::move(cont), false)) out.push_back(std::move(l));
  while (!out.empty() && out.front().empty()) out.erase(out.begin());
  return join(out, "\n");
}

auto is_identifier_like(std::string_view s) -> bool {
  if (s.empty()) return false;
  auto i = s.find_first_not_of('*');
  if (i == std::string_view::npos || i > 2) return false;
  auto const c = static_cast<unsigned char>(s[i]);
  if (!(c == '_' || std::isalpha(c) || c >= 0x80)) return false;
  for (; i < s.size(); ++i) {
    auto const d = static_cast<unsigned char>(s[i]);
    if (!(d == '_' || d == '.' || std::isalnum(d) || d >= 0x80)) return false;
  }
  return true;
}

auto is_type_name(std::string_view s) -> bool {
  if (s.empty()) return false;
  for (auto c : s) {
    auto const d = static_cast<unsigned char>(c);
    if (!(d == '_' || d == '.' || std::isalnum(d) || d >= 0x80)) return false;
  }
  return true;
}

// Google "Returns:" lines may start with `type:`. Prose markers and phrases
// with spaces outside brackets are not types.
auto split_typed_line(std::string_view line)
    -> std::optional<std::pair<std::string, std::string>> {
  static constexpr std::array<std::string_view, 5> kMarkers{
      "TODO", "FIXME", "XXX", "NOTE", "HACK"};
  int depth = 0;
  for (std::size_t i = 0; i < line.size(); ++i) {
    auto const c = line[i];
    if (c == '[' || c == '(' || c == '{') ++depth;
    if (c == ']' || c == ')' || c == '}') --depth;
    if (depth == 0 && c == ' ') return std::nullopt;
    if (depth == 0 && c == ':') {
      if (i == 0) return std::nullopt;
      if (i + 1 < line.size() && line[i + 1] != ' ') return std::nullopt;
      auto const type = line.substr(0, i);
      for (auto m : kMarkers) {
        if (type == m) return std::nullopt;
      }
      return std::pair{std::string{type}, std::string{trim(line.substr(i + 1))}};
    }
  }
  return std::nullopt;
}

struct Line {
  std::string text;
  std::size_t indent{};
  bool blank{};
};

class DocParser {
 public:
  DocParser(std::string_view cleaned, DocStyle style) : style_{style} {
    for (auto const& l : split_lines(cleaned)) {
      Line line;
      line.text = std::string{l};
      line.blank = is_blank(l);
      line.indent = line.blank ? 0 : leading_ws(l);
      lines_.push_back(std::move(line));
    }
  }

  auto run() -> DocAst {
    ast_.style_detected = style_;
    std::size_t pos = 0;
    auto const n = lines_.size();
    if (n > 0 && !section_start(0)) {
      std::vector<std::string> words;
      while (pos < n && !lines_[pos].blank && (pos == 0 || !section_start(pos))) {
        words.emplace_back(trim(lines_[pos].text));
        ++pos;
      }
      ast_.blocks.emplace_back(SummaryBlock{join(words, " ")});
    }
    while (pos < n) {
      if (lines_[pos].blank) {
        ++pos;
        continue;
      }
      if (section_start(pos)) {
        auto const end = parse_section(pos);
        if (end != kNpos) {
          seen_section_ = true;
          pos = end;
          continue;
        }
        ast_.degraded.push_back(std::string{trim(lines_[pos].text)});
        pos = chunk(pos, section_extent(pos));
        continue;
      }
      auto end = pos + 1;
      while (end < n && !section_start(end)) ++end;
      pos = chunk(pos, end);
    }
    return std::move(ast_);
  }

 private:
  // Stores lines [begin, end) as free text; returns `end`.
  auto chunk(std::size_t begin, std::size_t end) -> std::size_t {
    std::vector<std::string> text;
    for (auto i = begin; i < end; ++i) text.push_back(lines_[i].text);
    while (!text.empty() && is_blank(text.back())) text.pop_back();
    for (auto& t : text) t = std::string{trim_right(t)};
    if (!text.empty()) {
      auto joined = join(text, "\n");
      if (!seen_section_) {
        if (auto* d = last_block<DescriptionBlock>()) {
          d->text += "\n\n" + joined;
        } else {
          ast_.blocks.emplace_back(DescriptionBlock{std::move(joined)});
        }
      } else {
        if (auto* o = last_block<OpaqueBlock>()) {
          o->verbatim += "\n\n" + joined;
        } else {
          ast_.blocks.emplace_back(OpaqueBlock{std::move(joined)});
        }
      }
    }
    return end;
  }

  template <typename T>
  auto last_block() -> T* {
    if (ast_.blocks.empty()) return nullptr;
    return std::get_if<T>(&ast_.blocks.back());
  }

  auto params() -> ParamSection& {
    if (auto* p = find_block<ParamSection>(ast_.blocks)) return *p;
    ast_.blocks.emplace_back(ParamSection{});
    return std::get<ParamSection>(ast_.blocks.back());
  }
  auto returns() -> ReturnsSection& {
    if (auto* p = find_block<ReturnsSection>(ast_.blocks)) return *p;
    ast_.blocks.emplace_back(ReturnsSection{});
    return std::get<ReturnsSection>(ast_.blocks.back());
  }
  auto raises() -> RaisesSection& {
    if (auto* p = find_block<RaisesSection>(ast_.blocks)) return *p;
    ast_.blocks.emplace_back(RaisesSection{});
    return std::get<RaisesSection>(ast_.blocks.back());
  }

  // --- section recognition ---------------------------------------------

  auto section_start(std::size_t i) const -> bool {
    auto const& line = lines_[i];
    if (line.blank || line.indent != 0) return false;
    switch (style_) {
      case DocStyle::kRest:
        return rest_field(line.text).has_value();
      case DocStyle::kGoogle:
        return google_header(line.text) != GoogleKind::kNone;
      case DocStyle::kNumpy:
        return numpy_header(i) != GoogleKind::kNone;
      case DocStyle::kJavadoc:
        return javadoc_tag(line.text).has_value();
      case DocStyle::kUnknown:
        return false;
    }
    return false;
  }

  // Lines a malformed section spans, so it degrades as one text block.
  auto section_extent(std::size_t i) const -> std::size_t {
    switch (style_) {
      case DocStyle::kRest:
        return indented_run_end(i + 1);
      case DocStyle::kGoogle:
        return indented_run_end(i + 1);
      case DocStyle::kNumpy:
        return numpy_section_end(i + 2, true);
      case DocStyle::kJavadoc:
        return javadoc_run_end(i + 1);
      case DocStyle::kUnknown:
        break;
    }
    return i + 1;
  }

  // End of a run of blank or indented lines (trailing blanks excluded).
  auto indented_run_end(std::size_t i) const -> std::size_t {
    auto last = i;
    while (i < lines_.size() && (lines_[i].blank || lines_[i].indent > 0)) {
      ++i;
      if (!lines_[i - 1].blank) last = i;
    }
    return last;
  }

  auto parse_section(std::size_t i) -> std::size_t {
    switch (style_) {
      case DocStyle::kRest:
        return parse_rest_field(i);
      case DocStyle::kGoogle:
        return parse_google_section(i);
      case DocStyle::kNumpy:
        return parse_numpy_section(i);
      case DocStyle::kJavadoc:
        return parse_javadoc_tag(i);
      case DocStyle::kUnknown:
        break;
    }
    return kNpos;
  }

  // --- reST field lists -------------------------------------------------

  enum class RestKind { kParam, kType, kReturns, kRtype, kRaises };

  struct RestField {
    RestKind kind;
    std::string args;
    std::string rest;
  };

  static auto rest_field(std::string_view line) -> std::optional<RestField> {
    if (!line.starts_with(':')) return std::nullopt;
    auto const close = line.find(':', 1);
    if (close == std::string_view::npos) return std::nullopt;
    if (close + 1 < line.size() && line[close + 1] != ' ' && line[close + 1] != '\t') {
      return std::nullopt;
    }
    auto const inner = line.substr(1, close - 1);
    auto const sp = inner.find_first_of(" \t");
    auto const word = inner.substr(0, sp);
    auto const args =
        sp == std::string_view::npos ? std::string_view{} : trim(inner.substr(sp));
    RestField field{RestKind::kParam, std::string{args},
                    std::string{trim(line.substr(close + 1))}};
    if (word == "param" || word == "parameter" || word == "arg" ||
        word == "argument" || word == "key" || word == "keyword") {
      field.kind = RestKind::kParam;
    } else if (word == "type") {
      field.kind = RestKind::kType;
    } else if (word == "returns" || word == "return") {
      field.kind = RestKind::kReturns;
    } else if (word == "rtype") {
      field.kind = RestKind::kRtype;
    } else if (word == "raises" || word == "raise" || word == "except" ||
               word == "exception") {
      field.kind = RestKind::kRaises;
    } else {
      return std::nullopt;
    }
    return field;
  }

  auto continuation(std::size_t from, std::size_t to) const
      -> std::vector<std::string> {
    std::vector<std::string> out;
    for (auto i = from; i < to; ++i) out.push_back(lines_[i].text);
    return out;
  }

  auto find_param(std::string_view name) -> DocParam* {
    for (auto& p : params().items) {
      if (p.name == name) return &p;
    }
    return nullptr;
  }

  auto parse_rest_field(std::size_t i) -> std::size_t {
    auto const field = *rest_field(lines_[i].text);
    auto const end = indented_run_end(i + 1);
    auto const desc = field_desc(field.rest, continuation(i + 1, end));
    std::vector<std::string> args;
    {
      std::string_view rest = field.args;
      while (!rest.empty()) {
        auto const sp = rest.find_first_of(" \t");
        args.emplace_back(rest.substr(0, sp));
        rest = sp == std::string_view::npos ? std::string_view{}
                                            : trim_left(rest.substr(sp));
      }
    }
    switch (field.kind) {
      case RestKind::kParam: {
        if (args.empty()) return kNpos;
        auto const& name = args.back();
        std::string type;
        for (std::size_t k = 0; k + 1 < args.size(); ++k) {
          if (k > 0) type += " ";
          type += args[k];
        }
        if (auto* existing = find_param(name)) {
          if (!existing->desc.empty()) return kNpos;
          existing->desc = desc;
          if (!type.empty()) existing->type_text = type;
        } else {
          params().items.push_back(DocParam{name, type, desc});
        }
        break;
      }
      case RestKind::kType: {
        if (args.size() != 1 || desc.empty()) return kNpos;
        if (auto* existing = find_param(args[0])) {
          existing->type_text = desc;
        } else {
          params().items.push_back(DocParam{args[0], desc, ""});
        }
        break;
      }
      case RestKind::kReturns:
        if (!args.empty()) return kNpos;
        returns().desc = desc;
        break;
      case RestKind::kRtype:
        if (!args.empty() || desc.empty()) return kNpos;
        returns().type_text = desc;
        break;
      case RestKind::kRaises:
        if (args.empty()) return kNpos;
        raises().items.push_back(RaisesItem{std::string{field.args}, desc});
        break;
    }
    return end;
  }

  // --- Google sections --------------------------------------------------

  enum class GoogleKind { kNone, kParams, kReturns, kRaises };

  static auto google_header(std::string_view line) -> GoogleKind {
    auto const t = trim_right(line);
    if (t == "Args:" || t == "Arguments:" || t == "Parameters:" ||
        t == "Params:") {
      return GoogleKind::kParams;
    }
    if (t == "Returns:" || t == "Return:") return GoogleKind::kReturns;
    if (t == "Raises:") return GoogleKind::kRaises;
    return GoogleKind::kNone;
  }

  // Splits dedented section lines into items: a line at column zero starts
  // an item, deeper lines continue it.
  static auto split_items(std::vector<std::string> const& body)
      -> std::optional<std::vector<std::pair<std::string, std::vector<std::string>>>> {
    std::vector<std::pair<std::string, std::vector<std::string>>> items;
    for (auto const& l : body) {
      if (!is_blank(l) && leading_ws(l) == 0) {
        items.emplace_back(l, std::vector<std::string>{});
      } else {
        if (items.empty()) return std::nullopt;
        items.back().second.push_back(l);
      }
    }
    return items;
  }

  auto parse_google_section(std::size_t i) -> std::size_t {
    auto const kind = google_header(lines_[i].text);
    auto const end = indented_run_end(i + 1);
    auto const body = dedent(continuation(i + 1, end));
    if (body.empty()) return kNpos;
    if (kind == GoogleKind::kReturns) {
      std::vector<std::string> rest(body.begin() + 1, body.end());
      auto& ret = returns();
      if (!ret.desc.empty() || !ret.type_text.empty()) return kNpos;
      if (auto typed = split_typed_line(body.front())) {
        ret.type_text = typed->first;
        ret.desc = field_desc(typed->second, rest);
      } else {
        ret.desc = field_desc(body.front(), rest);
      }
      return end;
    }
    auto const items = split_items(body);
    if (!items || items->empty()) return kNpos;
    if (kind == GoogleKind::kParams) {
      std::vector<DocParam> parsed;
      for (auto const& [head, cont] : *items) {
        auto p = google_param(head);
        if (!p) return kNpos;
        p->desc = field_desc(p->desc, cont);
        parsed.push_back(std::move(*p));
      }
      auto& section = params();
      section.items.insert(section.items.end(), parsed.begin(), parsed.end());
    } else {
      std::vector<RaisesItem> parsed;
      for (auto const& [head, cont] : *items) {
        auto const colon = head.find(':');
        if (colon == std::string::npos) return kNpos;
        auto const type = trim(std::string_view{head}.substr(0, colon));
        if (!is_type_name(type)) return kNpos;
        if (colon + 1 < head.size() && head[colon + 1] != ' ') return kNpos;
        parsed.push_back(RaisesItem{
            std::string{type},
            field_desc(std::string_view{head}.substr(colon + 1), cont)});
      }
      auto& section = raises();
      section.items.insert(section.items.end(), parsed.begin(), parsed.end());
    }
    return end;
  }

  // `name (type): desc` or `name: desc`
  static auto google_param(std::string_view head) -> std::optional<DocParam> {
    std::size_t i = 0;
    while (i < head.size() && head[i] != ' ' && head[i] != '(' && head[i] != ':') ++i;
    DocParam p;
    p.name = std::string{head.substr(0, i)};
    if (!is_identifier_like(p.name)) return std::nullopt;
    while (i < head.size() && head[i] == ' ') ++i;
    if (i < head.size() && head[i] == '(') {
      int depth = 0;
      auto const open = i;
      for (; i < head.size(); ++i) {
        if (head[i] == '(') ++depth;
        if (head[i] == ')' && --depth == 0) break;
      }
      if (i >= head.size()) return std::nullopt;
      p.type_text = std::string{trim(head.substr(open + 1, i - open - 1))};
      ++i;
      while (i < head.size() && head[i] == ' ') ++i;
    }
    if (i >= head.size() || head[i] != ':') return std::nullopt;
    if (i + 1 < head.size() && head[i + 1] != ' ') return std::nullopt;
    p.desc = std::string{trim(head.substr(i + 1))};
    return p;
  }

  // --- NumPy sections ---------------------------------------------------

  auto numpy_header(std::size_t i) const -> GoogleKind {
    if (i + 1 >= lines_.size() || lines_[i + 1].indent != 0 ||
        !is_dash_line(lines_[i + 1].text)) {
      return GoogleKind::kNone;
    }
    auto const t = trim_right(lines_[i].text);
    if (t == "Parameters" || t == "Params") return GoogleKind::kParams;
    if (t == "Returns") return GoogleKind::kReturns;
    if (t == "Raises") return GoogleKind::kRaises;
    return GoogleKind::kNone;
  }

  auto any_numpy_header(std::size_t i) const -> bool {
    return i + 1 < lines_.size() && !lines_[i].blank && lines_[i].indent == 0 &&
           !is_dash_line(lines_[i].text) && lines_[i + 1].indent == 0 &&
           is_dash_line(lines_[i + 1].text);
  }

  // End of a NumPy section body starting at `i`. A section stops at the next
  // underlined header, or at a blank line followed by a top-level line that
  // cannot start an item (when `lenient` is false).
  auto numpy_section_end(std::size_t i, bool lenient,
                         GoogleKind kind = GoogleKind::kNone) const -> std::size_t {
    auto last = i;
    bool entry_seen = false;
    for (; i < lines_.size(); ++i) {
      auto const& line = lines_[i];
      if (any_numpy_header(i)) break;
      if (!lenient && !line.blank && line.indent == 0 && i > 0 &&
          lines_[i - 1].blank && entry_seen) {
        auto const t = std::string_view{line.text};
        bool item_like = false;
        if (kind == GoogleKind::kParams) {
          item_like = numpy_param_names(t).has_value();
        } else if (kind == GoogleKind::kRaises) {
          item_like = is_type_name(trim(t));
        }
        if (!item_like) break;
      }
      if (!line.blank) {
        last = i + 1;
        entry_seen = true;
      }
    }
    return last;
  }

  static auto numpy_param_names(std::string_view head)
      -> std::optional<std::pair<std::vector<std::string>, std::string>> {
    auto const colon = head.find(':');
    auto const names_part =
        trim(colon == std::string_view::npos ? head : head.substr(0, colon));
    std::string type = colon == std::string_view::npos
                           ? std::string{}
                           : std::string{trim(head.substr(colon + 1))};
    // "Note:" reads as prose; a bare colon needs a type after it.
    if (colon != std::string_view::npos && type.empty() &&
        (colon == 0 || head[colon - 1] != ' ')) {
      return std::nullopt;
    }
    std::vector<std::string> names;
    std::string_view rest = names_part;
    while (true) {
      auto const comma = rest.find(',');
      auto const name = trim(rest.substr(0, comma));
      if (!is_identifier_like(name)) return std::nullopt;
      names.emplace_back(name);
      if (comma == std::string_view::npos) break;
      rest = rest.substr(comma + 1);
    }
    return std::pair{std::move(names), std::move(type)};
  }

  auto parse_numpy_section(std::size_t i) -> std::size_t {
    auto const kind = numpy_header(i);
    auto const end = numpy_section_end(i + 2, false, kind);
    std::vector<std::string> body;
    for (auto k = i + 2; k < end; ++k) body.push_back(lines_[k].text);
    while (!body.empty() && is_blank(body.front())) body.erase(body.begin());
    if (body.empty()) return kNpos;
    if (kind == GoogleKind::kReturns) {
      auto& ret = returns();
      if (!ret.desc.empty() || !ret.type_text.empty()) return kNpos;
      if (leading_ws(body.front()) > 0) {
        ret.desc = field_desc("", body);
        return end;
      }
      for (std::size_t k = 1; k < body.size(); ++k) {
        if (!is_blank(body[k]) && leading_ws(body[k]) == 0) return kNpos;
      }
      ret.type_text = std::string{trim(body.front())};
      ret.desc = field_desc("", {body.begin() + 1, body.end()});
      return end;
    }
    auto const items = split_items(body);
    if (!items || items->empty()) return kNpos;
    if (kind == GoogleKind::kParams) {
      std::vector<DocParam> parsed;
      for (auto const& [head, cont] : *items) {
        auto names = numpy_param_names(head);
        if (!names) return kNpos;
        auto const desc = field_desc("", cont);
        for (auto const& name : names->first) {
          parsed.push_back(DocParam{name, names->second, desc});
        }
      }
      auto& section = params();
      section.items.insert(section.items.end(), parsed.begin(), parsed.end());
    } else {
      std::vector<RaisesItem> parsed;
      for (auto const& [head, cont] : *items) {
        auto const type = trim(head);
        if (!is_type_name(type)) return kNpos;
        parsed.push_back(RaisesItem{std::string{type}, field_desc("", cont)});
      }
      auto& section = raises();
      section.items.insert(section.items.end(), parsed.begin(), parsed.end());
    }
    return end;
  }

  // --- Javadoc tags -----------------------------------------------------

  enum class TagKind { kParam, kReturn, kThrows };

  static auto javadoc_tag(std::string_view line)
      -> std::optional<std::pair<TagKind, std::string_view>> {
    auto const sp = line.find_first_of(" \t");
    auto const word = line.substr(0, sp);
    auto const rest =
        sp == std::string_view::npos ? std::string_view{} : line.substr(sp + 1);
    if (word == "@param") return std::pair{TagKind::kParam, rest};
    if (word == "@return" || word == "@returns") {
      return std::pair{TagKind::kReturn, rest};
    }
    if (word == "@throws" || word == "@exception") {
      return std::pair{TagKind::kThrows, rest};
    }
    return std::nullopt;
  }

  // A tag runs until a blank line or the next tag. Blank lines followed by
  // an indented line continue the tag, so descriptions can hold paragraphs.
  auto javadoc_run_end(std::size_t i) const -> std::size_t {
    auto const n = lines_.size();
    while (i < n) {
      if (lines_[i].blank) {
        auto k = i;
        while (k < n && lines_[k].blank) ++k;
        if (k < n && lines_[k].indent > 0 &&
            !trim_left(lines_[k].text).starts_with('@')) {
          i = k;
          continue;
        }
        break;
      }
      if (trim_left(lines_[i].text).starts_with('@')) break;
      ++i;
    }
    return i;
  }

  // Takes a leading `{...}` group off `rest`.
  static auto take_braced(std::string_view& rest) -> std::optional<std::string> {
    rest = trim_left(rest);
    if (!rest.starts_with('{')) return std::nullopt;
    int depth = 0;
    for (std::size_t i = 0; i < rest.size(); ++i) {
      if (rest[i] == '{') ++depth;
      if (rest[i] == '}' && --depth == 0) {
        auto type = std::string{trim(rest.substr(1, i - 1))};
        rest = trim_left(rest.substr(i + 1));
        return type;
      }
    }
    return std::nullopt;
  }

  // Takes one word, or a balanced `[...]` group, off `rest`.
  static auto take_word(std::string_view& rest) -> std::string {
    rest = trim_left(rest);
    std::size_t i = 0;
    if (rest.starts_with('[')) {
      int depth = 0;
      for (; i < rest.size(); ++i) {
        if (rest[i] == '[') ++depth;
        if (rest[i] == ']' && --depth == 0) {
          ++i;
          break;
        }
      }
    } else {
      while (i < rest.size() && rest[i] != ' ' && rest[i] != '\t') ++i;
    }
    auto word = std::string{rest.substr(0, i)};
    rest = trim_left(rest.substr(i));
    return word;
  }

  auto parse_javadoc_tag(std::size_t i) -> std::size_t {
    auto const [kind, after] = *javadoc_tag(lines_[i].text);
    auto const end = javadoc_run_end(i + 1);
    auto cont = continuation(i + 1, end);
    std::string_view rest = after;
    auto const type = take_braced(rest);
    switch (kind) {
      case TagKind::kParam: {
        auto name = take_word(rest);
        if (name.empty()) return kNpos;
        params().items.push_back(
            DocParam{std::move(name), type.value_or(""), field_desc(rest, cont)});
        break;
      }
      case TagKind::kReturn: {
        auto& ret = returns();
        if (!ret.desc.empty() || !ret.type_text.empty()) return kNpos;
        ret.type_text = type.value_or("");
        ret.desc = field_desc(rest, cont);
        break;
      }
      case TagKind::kThrows: {
        auto name = type ? *type : take_word(rest);
        if (name.empty()) return kNpos;
        raises().items.push_back(RaisesItem{std::move(name), field_desc(rest, cont)});
        break;
      }
    }
    return end;
  }

  DocStyle style_;
  std::vector<Line> lines_;
  DocAst ast_;
  bool seen_section_{false};
};

auto strip_gutters(std::string_view text) -> std::string {
  auto lines = split_lines(text);
  bool all = lines.size() > 1;
  for (std::size_t i = 1; i < lines.size() && all; ++i) {
    auto const t = trim_left(lines[i]);
    if (!t.empty() && !t.starts_with('*')) all = false;
  }
  if (!all) return std::string{text};
  std::string out{lines[0]};
  for (std::size_t i = 1; i < lines.size(); ++i) {
    out += '\n';
    auto t = trim_left(lines[i]);
    if (t.starts_with('*')) {
      t.remove_prefix(1);
      if (t.starts_with(' ')) t.remove_prefix(1);
    }
    out += t;
  }
  return out;
}

auto normalize_newlines(std::string_view raw) -> std::string {
  std::string out;
  out.reserve(raw.size());
  for (std::size_t i = 0; i < raw.size(); ++i) {
    if (raw[i] == '\r') {
      if (i + 1 < raw.size() && raw[i + 1] == '\n') continue;
      out += '\n';
      continue;
    }
    out += raw[i];
  }
  return out;
}

// --- rendering -------------------------------------------------------------

void push_multiline(std::vector<std::string>& out, std::string_view first_prefix,
                    std::string_view text, std::string_view cont_prefix) {
  auto const lines = split_lines(text);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (i == 0) {
      auto head = std::string{first_prefix};
      if (!lines[0].empty()) {
        if (!head.empty() && !head.ends_with(' ')) head += ' ';
        head += lines[0];
      }
      out.push_back(std::string{trim_right(head)});
    } else if (lines[i].empty()) {
      out.emplace_back();
    } else {
      out.push_back(std::string{cont_prefix} + std::string{lines[i]});
    }
  }
  if (lines.empty()) out.push_back(std::string{trim_right(first_prefix)});
}

auto render_params(ParamSection const& section, DocStyle style)
    -> std::vector<std::string> {
  std::vector<std::string> out;
  switch (style) {
    case DocStyle::kRest:
      for (auto const& p : section.items) {
        push_multiline(out, ":param " + p.name + ":", p.desc, "    ");
        if (!p.type_text.empty()) out.push_back(":type " + p.name + ": " + p.type_text);
      }
      break;
    case DocStyle::kGoogle:
      out.emplace_back("Args:");
      for (auto const& p : section.items) {
        auto head = "    " + p.name;
        if (!p.type_text.empty()) head += " (" + p.type_text + ")";
        push_multiline(out, head + ":", p.desc, "        ");
      }
      break;
    case DocStyle::kNumpy:
      out.emplace_back("Parameters");
      out.emplace_back("----------");
      for (auto const& p : section.items) {
        out.push_back(p.type_text.empty() ? p.name : p.name + " : " + p.type_text);
        if (!p.desc.empty()) push_multiline(out, "    ", p.desc, "    ");
      }
      break;
    case DocStyle::kJavadoc:
      for (auto const& p : section.items) {
        auto head = std::string{"@param "};
        if (!p.type_text.empty()) head += "{" + p.type_text + "} ";
        push_multiline(out, head + p.name, p.desc, "    ");
      }
      break;
    case DocStyle::kUnknown:
      break;
  }
  return out;
}

auto render_returns(ReturnsSection const& ret, DocStyle style)
    -> std::vector<std::string> {
  std::vector<std::string> out;
  switch (style) {
    case DocStyle::kRest:
      if (!ret.desc.empty() || ret.type_text.empty()) {
        push_multiline(out, ":returns:", ret.desc, "    ");
      }
      if (!ret.type_text.empty()) out.push_back(":rtype: " + ret.type_text);
      break;
    case DocStyle::kGoogle:
      out.emplace_back("Returns:");
      if (!ret.type_text.empty()) {
        push_multiline(out, "    " + ret.type_text + ":", ret.desc, "    ");
      } else {
        push_multiline(out, "    ", ret.desc, "    ");
      }
      break;
    case DocStyle::kNumpy:
      out.emplace_back("Returns");
      out.emplace_back("-------");
      if (!ret.type_text.empty()) out.push_back(ret.type_text);
      if (!ret.desc.empty()) push_multiline(out, "    ", ret.desc, "    ");
      break;
    case DocStyle::kJavadoc: {
      auto head = std::string{"@return"};
      if (!ret.type_text.empty()) head += " {" + ret.type_text + "}";
      push_multiline(out, head, ret.desc, "    ");
      break;
    }
    case DocStyle::kUnknown:
      break;
  }
  return out;
}

auto render_raises(RaisesSection const& section, DocStyle style)
    -> std::vector<std::string> {
  std::vector<std::string> out;
  switch (style) {
    case DocStyle::kRest:
      for (auto const& r : section.items) {
        push_multiline(out, ":raises " + r.type_text + ":", r.desc, "    ");
      }
      break;
    case DocStyle::kGoogle:
      out.emplace_back("Raises:");
      for (auto const& r : section.items) {
        push_multiline(out, "    " + r.type_text + ":", r.desc, "        ");
      }
      break;
    case DocStyle::kNumpy:
      out.emplace_back("Raises");
      out.emplace_back("------");
      for (auto const& r : section.items) {
        out.push_back(r.type_text);
        if (!r.desc.empty()) push_multiline(out, "    ", r.desc, "    ");
      }
      break;
    case DocStyle::kJavadoc:
      for (auto const& r : section.items) {
        push_multiline(out, "@throws " + r.type_text, r.desc, "    ");
      }
      break;
    case DocStyle::kUnknown:
      break;
  }
  return out;
}

auto normalize_text(std::string_view text) -> std::string {
  std::vector<std::string> out;
  bool prev_blank = false;
  for (auto line : split_lines(text)) {
    auto const t = trim_right(line);
    if (t.empty()) {
      if (!prev_blank && !out.empty()) out.emplace_back();
      prev_blank = true;
      continue;
    }
    prev_blank = false;
    out.emplace_back(t);
  }
  while (!out.empty() && out.back().empty()) out.pop_back();
  if (!out.empty()) out.front() = std::string{trim_left(out.front())};
  return join(out, "\n");
}

}  // namespace

auto to_string(DocStyle style) -> std::string_view {
  switch (style) {
    case DocStyle::kRest:
      return "rest";
    case DocStyle::kGoogle:
      return "google";
    case DocStyle::kNumpy:
      return "numpy";
    case DocStyle::kJavadoc:
      return "javadoc";
    case DocStyle::kUnknown:
      return "unknown";
  }
  return "unknown";
}

auto style_from_string(std::string_view text) -> std::optional<DocStyle> {
  if (text == "rest") return DocStyle::kRest;
  if (text == "google") return DocStyle::kGoogle;
  if (text == "numpy") return DocStyle::kNumpy;
  if (text == "javadoc") return DocStyle::kJavadoc;
  return std::nullopt;
}

auto DocAst::summary() const -> SummaryBlock const* {
  return find_block<SummaryBlock>(blocks);
}
auto DocAst::params() const -> ParamSection const* {
  return find_block<ParamSection>(blocks);
}
auto DocAst::returns() const -> ReturnsSection const* {
  return find_block<ReturnsSection>(blocks);
}
auto DocAst::raises() const -> RaisesSection const* {
  return find_block<RaisesSection>(blocks);
}
auto DocAst::params() -> ParamSection* { return find_block<ParamSection>(blocks); }
auto DocAst::raises() -> RaisesSection* {
  return find_block<RaisesSection>(blocks);
}

auto clean_doc_text(std::string_view raw) -> std::string {
  auto const normalized = normalize_newlines(raw);
  auto const lines = split_lines(normalized);
  if (lines.empty()) return {};
  std::vector<std::string> rest;
  for (std::size_t i = 1; i < lines.size(); ++i) rest.emplace_back(lines[i]);
  auto common = kNpos;
  for (auto const& l : rest) {
    if (!is_blank(l)) common = std::min(common, leading_ws(l));
  }
  std::vector<std::string> out;
  out.emplace_back(trim(lines[0]));
  for (auto const& l : rest) {
    out.emplace_back(is_blank(l) ? std::string{}
                                 : std::string{trim_right(l.substr(common))});
  }
  while (!out.empty() && out.back().empty()) out.pop_back();
  while (!out.empty() && out.front().empty()) out.erase(out.begin());
  return join(out, "\n");
}

auto detect_style(std::string_view raw) -> StyleScores {
  StyleScores result;
  auto const normalized = normalize_newlines(raw);
  auto const lines = split_lines(normalized);
  auto stripped = [&](std::size_t i) {
    auto t = trim(lines[i]);
    if (t.starts_with('*') && !t.starts_with("*/")) {
      t.remove_prefix(1);
      t = trim_left(t);
    }
    return t;
  };
  for (std::size_t i = 0; i < lines.size(); ++i) {
    auto const t = stripped(i);
    for (std::string_view prefix : {":param", ":parameter", ":arg", ":type",
                                    ":returns", ":return", ":rtype", ":raises",
                                    ":raise"}) {
      if (t.starts_with(prefix) && t.size() > prefix.size() &&
          (t[prefix.size()] == ':' || t[prefix.size()] == ' ')) {
        ++result.scores[0];
        break;
      }
    }
    if (t == "Args:" || t == "Arguments:" || t == "Returns:" || t == "Raises:" ||
        t == "Parameters:" || t == "Return:") {
      ++result.scores[1];
    }
    if ((t == "Parameters" || t == "Returns" || t == "Raises") &&
        i + 1 < lines.size() && is_dash_line(lines[i + 1])) {
      ++result.scores[2];
    }
    for (auto prefix : {"@param", "@return", "@returns", "@throws", "@exception"}) {
      if (t.starts_with(prefix) &&
          (t.size() == std::string_view{prefix}.size() ||
           t[std::string_view{prefix}.size()] == ' ')) {
        ++result.scores[3];
        break;
      }
    }
  }
  static constexpr std::array<DocStyle, 4> kOrder{DocStyle::kRest, DocStyle::kGoogle,
                                                  DocStyle::kNumpy, DocStyle::kJavadoc};
  int best = 0;
  for (std::size_t k = 0; k < 4; ++k) {
    if (result.scores[k] > best) {
      best = result.scores[k];
      result.style = kOrder[k];
    }
  }
  return result;
}

auto parse_docstring(std::string_view raw, std::optional<DocStyle> style_hint)
    -> DocAst {
  auto const style = style_hint.value_or(detect_style(raw).style);
  auto const normalized = normalize_newlines(raw);
  auto const cleaned = clean_doc_text(
      style == DocStyle::kJavadoc ? strip_gutters(normalized) : normalized);
  return DocParser{cleaned, style}.run();
}

auto render_docstring(DocAst const& ast, DocStyle style, std::string_view indent)
    -> std::string {
  if (style == DocStyle::kUnknown) {
    throw UnrenderableStyle("cannot render the unknown style");
  }
  std::vector<std::vector<std::string>> groups;
  auto add_text = [&](std::string_view text) {
    std::vector<std::string> g;
    for (auto l : split_lines(text)) g.emplace_back(trim_right(l));
    while (!g.empty() && g.back().empty()) g.pop_back();
    if (!g.empty()) groups.push_back(std::move(g));
  };
  for (auto const& b : ast.blocks) {
    if (auto const* s = std::get_if<SummaryBlock>(&b)) add_text(s->text);
  }
  // Without a summary the text opens on its own line, so every content line
  // carries `indent` and relative indentation survives re-parsing.
  bool const open_blank = groups.empty();
  for (auto const& b : ast.blocks) {
    if (auto const* d = std::get_if<DescriptionBlock>(&b)) add_text(d->text);
  }
  for (auto const& b : ast.blocks) {
    if (auto const* p = std::get_if<ParamSection>(&b); p && !p->items.empty()) {
      groups.push_back(render_params(*p, style));
    }
  }
  for (auto const& b : ast.blocks) {
    if (auto const* r = std::get_if<ReturnsSection>(&b);
        r && (!r->desc.empty() || !r->type_text.empty())) {
      groups.push_back(render_returns(*r, style));
    }
  }
  for (auto const& b : ast.blocks) {
    if (auto const* r = std::get_if<RaisesSection>(&b); r && !r->items.empty()) {
      groups.push_back(render_raises(*r, style));
    }
  }
  for (auto const& b : ast.blocks) {
    if (auto const* o = std::get_if<OpaqueBlock>(&b)) add_text(o->verbatim);
  }

  std::vector<std::string> lines;
  if (open_blank && !groups.empty()) lines.emplace_back();
  for (auto const& g : groups) {
    if (!lines.empty() && !(lines.size() == 1 && open_blank)) lines.emplace_back();
    lines.insert(lines.end(), g.begin(), g.end());
  }
  std::string out;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    auto const line = trim_right(lines[i]);
    if (i == 0) {
      out += line;
      continue;
    }
    out += '\n';
    if (style == DocStyle::kJavadoc) {
      out += indent;
      out += line.empty() ? " *" : " * ";
      out += line;
    } else if (!line.empty()) {
      out += indent;
      out += line;
    }
  }
  return out;
}

auto canonicalize(DocAst const& ast) -> DocAst {
  DocAst out;
  out.style_detected = ast.style_detected;
  out.degraded = ast.degraded;

  std::string summary;
  std::vector<std::string> descriptions;
  std::vector<std::string> opaques;
  ParamSection params;
  ReturnsSection returns;
  RaisesSection raises;
  bool have_summary = false;

  for (auto const& b : ast.blocks) {
    if (auto const* s = std::get_if<SummaryBlock>(&b)) {
      std::vector<std::string> words;
      for (auto l : split_lines(s->text)) {
        if (!trim(l).empty()) words.emplace_back(trim(l));
      }
      auto text = join(words, " ");
      if (!text.empty() && !have_summary) {
        summary = std::move(text);
        have_summary = true;
      } else if (!text.empty()) {
        descriptions.push_back(std::move(text));
      }
    } else if (auto const* d = std::get_if<DescriptionBlock>(&b)) {
      auto text = normalize_text(d->text);
      if (!text.empty()) descriptions.push_back(std::move(text));
    } else if (auto const* p = std::get_if<ParamSection>(&b)) {
      for (auto const& item : p->items) {
        params.items.push_back(DocParam{std::string{trim(item.name)},
                                        std::string{trim(item.type_text)},
                                        normalize_text(item.desc)});
      }
    } else if (auto const* r = std::get_if<ReturnsSection>(&b)) {
      auto const type = std::string{trim(r->type_text)};
      auto const desc = normalize_text(r->desc);
      if (returns.type_text.empty()) returns.type_text = type;
      if (!desc.empty()) {
        returns.desc = returns.desc.empty() ? desc : returns.desc + "\n\n" + desc;
      }
    } else if (auto const* r = std::get_if<RaisesSection>(&b)) {
      for (auto const& item : r->items) {
        raises.items.push_back(RaisesItem{std::string{trim(item.type_text)},
                                          normalize_text(item.desc)});
      }
    } else if (auto const* o = std::get_if<OpaqueBlock>(&b)) {
      auto text = normalize_text(o->verbatim);
      if (!text.empty()) opaques.push_back(std::move(text));
    }
  }

  bool const has_sections = !params.items.empty() || !raises.items.empty() ||
                            !returns.desc.empty() || !returns.type_text.empty();
  if (!has_sections) {
    descriptions.insert(descriptions.end(), opaques.begin(), opaques.end());
    opaques.clear();
  }
  auto description = join(descriptions, "\n\n");
  if (!have_summary && !description.empty()) {
    // Without a summary the first paragraph reads as one.
    auto const lines = split_lines(description);
    std::vector<std::string> words;
    std::size_t i = 0;
    for (; i < lines.size() && !lines[i].empty(); ++i) {
      words.emplace_back(trim(lines[i]));
    }
    summary = join(words, " ");
    have_summary = true;
    std::vector<std::string> rest;
    for (++i; i < lines.size(); ++i) rest.emplace_back(lines[i]);
    description = normalize_text(join(rest, "\n"));
  }

  if (have_summary) out.blocks.emplace_back(SummaryBlock{summary});
  if (!description.empty()) out.blocks.emplace_back(DescriptionBlock{description});
  if (!params.items.empty()) out.blocks.emplace_back(std::move(params));
  if (!returns.desc.empty() || !returns.type_text.empty()) {
    out.blocks.emplace_back(std::move(returns));
  }
  if (!raises.items.empty()) out.blocks.emplace_back(std::move(raises));
  if (!opaques.empty()) out.blocks.emplace_back(OpaqueBlock{join(opaques, "\n\n")});
  return out;
}

}  // namespace autodoc
