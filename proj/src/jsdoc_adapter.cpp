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
#include <limits>
#include <optional>
#include <set>

#include "adapters.hpp"
#include "jsdoc_lexer.hpp"

namespace autodoc::detail {

namespace {

using jsdoc::Lexed;
using jsdoc::Token;
using jsdoc::TokenKind;

constexpr auto kNpos = std::numeric_limits<std::size_t>::max();

std::set<std::string_view> const kModifiers{
    "export",   "default",   "declare",  "abstract", "public",
    "private",  "protected", "static",   "final",    "async",
    "readonly", "override",  "synchronized", "native", "transient",
    "volatile", "strictfp",  "sealed"};

std::set<std::string_view> const kNotAName{
    "if",     "for",   "while", "switch", "catch", "return", "new",
    "throw",  "super", "this",  "else",   "do",    "try",    "typeof",
    "delete", "void",  "with",  "synchronized", "function", "await", "yield",
    "case",   "in",    "of",    "instanceof"};

std::set<std::string_view> const kControl{"if",    "for",  "while",
                                          "switch", "catch", "with",
                                          "synchronized", "try"};

enum class Scope { kTop, kClass, kBlock, kAny };

struct Decl {
  EntityKind kind{EntityKind::kFunction};
  std::size_t name{kNpos};    // token index of the name
  std::size_t after_annotations{};
  std::size_t params{kNpos};  // token index of `(`, or of a lone parameter
  bool lone_param{false};
  std::size_t body{kNpos};    // token index of `{`
  std::size_t type_first{kNpos};  // Java-style return type tokens
  std::size_t type_last{kNpos};
  std::size_t ret_first{kNpos};   // TS-style `: Type` after the parameters
  std::size_t ret_last{kNpos};
};

class Matcher {
 public:
  Matcher(std::string_view text, Lexed const& lexed)
      : text_{text}, toks_{lexed.tokens}, partner_{lexed.partner} {}

  [[nodiscard]] auto at(std::size_t i) const -> std::string_view {
    return i < toks_.size() ? jsdoc::text_of(text_, toks_[i]) : std::string_view{};
  }
  [[nodiscard]] auto is(std::size_t i, std::string_view s) const -> bool {
    return i < toks_.size() && at(i) == s;
  }
  [[nodiscard]] auto ident(std::size_t i) const -> bool {
    return i < toks_.size() && toks_[i].kind == TokenKind::kIdent;
  }
  [[nodiscard]] auto partner(std::size_t i) const -> std::size_t {
    return i < partner_.size() ? partner_[i] : kNpos;
  }

  // Skips a `<...>` run starting at `i`; returns the index after it.
  [[nodiscard]] auto skip_angle(std::size_t i) const -> std::size_t {
    int depth = 0;
    for (; i < toks_.size(); ++i) {
      auto const t = at(i);
      if (t == "<") ++depth;
      if (t == ">") {
        if (--depth == 0) return i + 1;
      }
      if (t == "{" || t == ";" || t == "=>") return kNpos;
    }
    return kNpos;
  }

  // Skips a type annotation until one of the stop tokens at depth zero.
  [[nodiscard]] auto skip_type(std::size_t i,
                               std::initializer_list<std::string_view> stops) const
      -> std::size_t {
    while (i < toks_.size()) {
      auto const t = at(i);
      for (auto s : stops) {
        if (t == s) return i;
      }
      if (t == ";" || t == "}") return kNpos;
      if ((t == "(" || t == "[" || t == "{") && toks_[i].kind == TokenKind::kPunct) {
        auto const p = partner(i);
        if (p == kNpos) return kNpos;
        i = p + 1;
        continue;
      }
      ++i;
    }
    return kNpos;
  }

  [[nodiscard]] auto match(std::size_t i, Scope scope) const -> std::optional<Decl> {
    Decl decl;
    auto j = i;
    while (is(j, "@") && !is(j + 1, "interface")) {
      if (!ident(j + 1)) return std::nullopt;
      j += 2;
      while (is(j, ".") && ident(j + 1)) j += 2;
      if (is(j, "(")) {
        auto const p = partner(j);
        if (p == kNpos) return std::nullopt;
        j = p + 1;
      }
    }
    decl.after_annotations = j;
    while (ident(j)) {
      auto const t = at(j);
      if (t == "static" && is(j + 1, "{")) return std::nullopt;
      if ((t == "get" || t == "set") && ident(j + 1) && is(j + 2, "(")) {
        ++j;
        continue;
      }
      if (!kModifiers.contains(t)) break;
      // `async(...)` or `static()` used as a method name
      if (is(j + 1, "(")) break;
      ++j;
    }
    if (is(j, "@") && is(j + 1, "interface")) ++j;

    if (is(j, "class") || is(j, "interface") || is(j, "enum")) {
      if (!ident(j + 1)) return std::nullopt;
      decl.kind = EntityKind::kClass;
      decl.name = j + 1;
      auto k = j + 2;
      while (k < toks_.size()) {
        auto const t = at(k);
        if ((t == "(" || t == "[") && toks_[k].kind == TokenKind::kPunct) {
          auto const p = partner(k);
          if (p == kNpos) return std::nullopt;
          k = p + 1;
          continue;
        }
        if (t == "{") break;
        if (t == ";" || t == "=" || t == "}") return std::nullopt;
        ++k;
      }
      if (k >= toks_.size()) return std::nullopt;
      decl.body = k;
      return decl;
    }

    if (is(j, "function")) {
      auto k = j + 1;
      if (is(k, "*")) ++k;
      if (!ident(k)) return std::nullopt;
      decl.name = k++;
      if (is(k, "<")) k = skip_angle(k);
      if (!is(k, "(")) return std::nullopt;
      return finish_callable(decl, k, false);
    }

    if (scope != Scope::kClass && (is(j, "const") || is(j, "let") || is(j, "var"))) {
      if (!ident(j + 1)) return std::nullopt;
      decl.name = j + 1;
      return match_assigned_function(decl, j + 2);
    }

    if (scope == Scope::kClass || scope == Scope::kAny) {
      if (ident(j) && !kNotAName.contains(at(j))) {
        auto k = j + 1;
        if (is(k, "?") || is(k, "!")) ++k;
        if (is(k, ":") || is(k, "=")) {
          Decl field = decl;
          field.name = j;
          field.kind = EntityKind::kMethod;
          if (auto d = match_assigned_function(field, k)) return d;
        }
      }
      return match_method(decl, j);
    }
    return std::nullopt;
  }

 private:
  // `name [: T] = [async] (function ... | (params) => { | x => {`
  [[nodiscard]] auto match_assigned_function(Decl decl, std::size_t k) const
      -> std::optional<Decl> {
    if (is(k, ":")) {
      k = skip_type(k + 1, {"="});
      if (k == kNpos) return std::nullopt;
    }
    if (!is(k, "=")) return std::nullopt;
    ++k;
    if (is(k, "async")) ++k;
    if (is(k, "function")) {
      ++k;
      if (is(k, "*")) ++k;
      if (ident(k)) ++k;
      if (!is(k, "(")) return std::nullopt;
      return finish_callable(decl, k, false);
    }
    if (is(k, "<")) k = skip_angle(k);
    if (is(k, "(")) return finish_callable(decl, k, true);
    if (ident(k) && is(k + 1, "=>") && is(k + 2, "{")) {
      decl.params = k;
      decl.lone_param = true;
      decl.body = k + 2;
      return decl;
    }
    return std::nullopt;
  }

  [[nodiscard]] auto match_method(Decl decl, std::size_t j) const
      -> std::optional<Decl> {
    auto k = j;
    while (k < toks_.size() && !is(k, "(")) {
      auto const t = at(k);
      if (t == "<") {
        k = skip_angle(k);
        if (k == kNpos) return std::nullopt;
        continue;
      }
      bool const typeish = ident(k) || t == "." || t == "[" || t == "]" ||
                           t == "," || t == "?" || t == "*" || t == "&" ||
                           t == "|" || t == ">";
      if (!typeish) return std::nullopt;
      if (ident(k) && kNotAName.contains(t)) return std::nullopt;
      ++k;
    }
    if (k >= toks_.size() || k == j || !ident(k - 1)) return std::nullopt;
    decl.kind = EntityKind::kMethod;
    decl.name = k - 1;
    if (k - 1 > j) {
      decl.type_first = j;
      decl.type_last = k - 2;
    }
    return finish_callable(decl, k, false);
  }

  // `k` is the `(` of the parameter list.
  [[nodiscard]] auto finish_callable(Decl decl, std::size_t k, bool arrow) const
      -> std::optional<Decl> {
    auto const close = partner(k);
    if (close == kNpos) return std::nullopt;
    decl.params = k;
    auto m = close + 1;
    if (is(m, ":")) {
      auto const stop = arrow ? skip_type(m + 1, {"=>"}) : skip_type(m + 1, {"{"});
      if (stop == kNpos || stop == m + 1) return std::nullopt;
      decl.ret_first = m + 1;
      decl.ret_last = stop - 1;
      m = stop;
    } else if (!arrow && is(m, "throws")) {
      ++m;
      while (m < toks_.size() && (ident(m) || is(m, ".") || is(m, ","))) ++m;
    }
    if (arrow) {
      if (!is(m, "=>")) return std::nullopt;
      ++m;
    }
    if (!is(m, "{")) return std::nullopt;
    decl.body = m;
    return decl;
  }

  std::string_view text_;
  std::vector<Token> const& toks_;
  std::vector<std::size_t> const& partner_;
};

auto trim(std::string_view s) -> std::string_view {
  auto const b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  auto const e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

auto build_signature(std::string_view text, Lexed const& lexed, Decl const& d)
    -> Signature {
  Matcher const m{text, lexed};
  auto const& toks = lexed.tokens;
  auto verbatim = [&](std::size_t first, std::size_t last) {
    return std::string{trim(text.substr(toks[first].begin,
                                        toks[last].end - toks[first].begin))};
  };
  Signature sig;
  if (d.ret_first != kNpos) {
    sig.returns_annotation = verbatim(d.ret_first, d.ret_last);
  } else if (d.type_first != kNpos) {
    sig.returns_annotation = verbatim(d.type_first, d.type_last);
  }
  if (d.params == kNpos) return sig;
  if (d.lone_param) {
    sig.params.push_back(Param{std::string{m.at(d.params)}, ParamKind::kPositional, {}, {}});
    return sig;
  }
  auto const close = m.partner(d.params);
  std::vector<std::pair<std::size_t, std::size_t>> segments;
  auto seg = d.params + 1;
  int depth = 0;
  for (auto i = d.params + 1; i < close; ++i) {
    auto const t = m.at(i);
    if (toks[i].kind == TokenKind::kPunct) {
      if (t == "(" || t == "[" || t == "{" || t == "<") ++depth;
      if (t == ")" || t == "]" || t == "}" || t == ">") --depth;
      if (t == "," && depth == 0) {
        segments.emplace_back(seg, i);
        seg = i + 1;
      }
    }
  }
  if (seg < close) segments.emplace_back(seg, close);

  std::set<std::string> seen;
  for (auto [first, last] : segments) {
    if (first == last) continue;
    auto i = first;
    while (m.is(i, "@") && m.ident(i + 1)) {
      i += 2;
      while (m.is(i, ".") && m.ident(i + 1)) i += 2;
      if (m.is(i, "(")) i = m.partner(i) + 1;
    }
    while (i + 1 < last && m.ident(i + 1) &&
           (m.is(i, "public") || m.is(i, "private") || m.is(i, "protected") ||
            m.is(i, "readonly") || m.is(i, "override") || m.is(i, "final"))) {
      ++i;
    }
    if (i >= last || m.is(i, "{") || m.is(i, "[") || m.is(i, "this")) continue;
    Param param;
    if (m.is(i, "...")) {
      param.kind = ParamKind::kVarPositional;
      ++i;
    }
    if (!m.ident(i)) continue;
    bool const script_style = i + 1 == last || m.is(i + 1, ":") ||
                              m.is(i + 1, "?") || m.is(i + 1, "=") ||
                              m.is(i + 1, "!");
    if (script_style) {
      param.name = std::string{m.at(i)};
      auto k = i + 1;
      if (m.is(k, "?") || m.is(k, "!")) ++k;
      if (m.is(k, ":")) {
        auto const ann = k + 1;
        int dd = 0;
        while (k + 1 < last) {
          ++k;
          auto const t = m.at(k);
          if (t == "(" || t == "[" || t == "{" || t == "<") ++dd;
          if (t == ")" || t == "]" || t == "}" || t == ">") --dd;
          if (t == "=" && dd == 0) break;
        }
        auto const ann_last = m.is(k, "=") ? k - 1 : k;
        if (ann <= ann_last) param.annotation_text = verbatim(ann, ann_last);
        if (!m.is(k, "=")) k = last;
      }
      if (m.is(k, "=") && k + 1 < last) {
        param.default_text = verbatim(k + 1, last - 1);
      }
    } else {
      // Java: `Type name` or `Type... name`
      auto const name = last - 1;
      if (!m.ident(name)) continue;
      param.name = std::string{m.at(name)};
      for (auto k = i; k < name; ++k) {
        if (m.is(k, "...")) param.kind = ParamKind::kVarPositional;
      }
      auto type_last = name - 1;
      if (m.is(type_last, "...")) --type_last;
      if (type_last >= i && type_last != kNpos) {
        param.annotation_text = verbatim(i, type_last);
      }
    }
    if (!seen.insert(param.name).second) {
      throw SignatureParseError("duplicate parameter '" + param.name + "'");
    }
    sig.params.push_back(std::move(param));
  }
  return sig;
}

auto line_start_of(std::string_view text, std::size_t offset) -> std::size_t {
  auto const nl = text.rfind('\n', offset == 0 ? 0 : offset - 1);
  if (offset == 0 || nl == std::string_view::npos) return 0;
  return nl + 1;
}

auto is_blank(std::string_view s) -> bool {
  return s.find_first_not_of(" \t\r\f\v") == std::string_view::npos;
}

struct Walker {
  SourceUnit const& unit;
  std::string_view text;
  Lexed const& lexed;
  Matcher matcher;
  std::vector<CodeEntity> entities;

  auto doc_slot_for(std::size_t header_begin) const -> DocSlot {
    auto const line_start = line_start_of(text, header_begin);
    auto const lead = text.substr(line_start, header_begin - line_start);
    std::string const indent = is_blank(lead) ? std::string{lead} : std::string{};

    auto const& docs = lexed.docs;
    auto it = std::upper_bound(
        docs.begin(), docs.end(), header_begin,
        [](std::size_t off, jsdoc::DocComment const& d) { return off < d.end; });
    if (it != docs.begin()) {
      auto const& doc = *std::prev(it);
      auto const gap = text.substr(doc.end, header_begin - doc.end);
      if (gap.find_first_not_of(" \t\r\n\f\v") == std::string_view::npos &&
          std::count(gap.begin(), gap.end(), '\n') <= 1) {
        auto const doc_line = line_start_of(text, doc.begin);
        auto const doc_lead = text.substr(doc_line, doc.begin - doc_line);
        ExistingDoc existing;
        existing.span = ByteRange{doc.begin, doc.end};
        existing.delimiter = "/**";
        existing.raw_text =
            std::string{text.substr(doc.begin + 3, doc.end - doc.begin - 5)};
        existing.indent = is_blank(doc_lead) ? std::string{doc_lead} : indent;
        return DocSlot{std::move(existing)};
      }
    }
    if (is_blank(lead)) return DocSlot{InsertionPoint{line_start, indent, true}};
    return DocSlot{InsertionPoint{header_begin, std::string{}, false}};
  }

  auto body_indent_for(ByteRange body, std::string const& decl_indent) const
      -> std::string {
    auto pos = text.find('\n', body.begin);
    while (pos != std::string_view::npos && pos + 1 < body.end) {
      auto const start = pos + 1;
      auto const eol = text.find('\n', start);
      auto const line = text.substr(start, (eol == std::string_view::npos
                                                ? text.size()
                                                : eol) - start);
      if (!is_blank(line)) {
        auto const ws = line.find_first_not_of(" \t");
        if (start + ws < body.end - 1) return std::string{line.substr(0, ws)};
        break;
      }
      pos = eol;
    }
    return decl_indent + "    ";
  }

  void visit(std::size_t lo, std::size_t hi, Scope scope,
             std::optional<std::size_t> parent) {
    auto const& toks = lexed.tokens;
    auto i = lo;
    while (i < hi) {
      bool const start = i == lo || matcher.is(i - 1, ";") ||
                         matcher.is(i - 1, "{") || matcher.is(i - 1, "}") ||
                         (scope == Scope::kClass && toks[i].newline_before);
      if (start) {
        if (auto decl = matcher.match(i, scope)) {
          auto const close = matcher.partner(decl->body);
          if (close != kNpos && close <= hi) {
            auto const index = add_entity(*decl, i, close, scope, parent);
            visit(decl->body + 1, close,
                  decl->kind == EntityKind::kClass ? Scope::kClass : Scope::kBlock,
                  index);
            i = close + 1;
            continue;
          }
        }
      }
      if (matcher.is(i, "{") && toks[i].kind == TokenKind::kPunct) {
        auto const close = matcher.partner(i);
        if (close != kNpos && close <= hi) {
          visit(i + 1, close, Scope::kBlock, parent);
          i = close + 1;
          continue;
        }
      }
      ++i;
    }
  }

  auto add_entity(Decl const& decl, std::size_t first, std::size_t close,
                  Scope scope, std::optional<std::size_t> parent) -> std::size_t {
    auto const& toks = lexed.tokens;
    CodeEntity entity;
    entity.name = std::string{matcher.at(decl.name)};
    if (decl.kind == EntityKind::kClass) {
      entity.kind = EntityKind::kClass;
    } else {
      entity.kind = scope == Scope::kClass ? EntityKind::kMethod
                                           : EntityKind::kFunction;
    }
    entity.qualified_name =
        parent ? entities[*parent].qualified_name + "." + entity.name
               : entity.name;
    entity.id = unit.path() + ":" + entity.qualified_name;
    entity.header_span =
        ByteRange{toks[first].begin, toks[decl.body - 1].end};
    entity.body_span = ByteRange{toks[decl.body].begin, toks[close].end};
    entity.doc_slot = doc_slot_for(toks[first].begin);
    auto const decl_line = line_start_of(text, toks[first].begin);
    auto const lead = text.substr(decl_line, toks[first].begin - decl_line);
    entity.body_indent = body_indent_for(
        entity.body_span, is_blank(lead) ? std::string{lead} : std::string{});
    if (entity.kind != EntityKind::kClass) {
      try {
        entity.signature = build_signature(text, lexed, decl);
      } catch (SignatureParseError const& e) {
        entity.signature_error = e.what();
      }
      entity.signature.is_method = entity.kind == EntityKind::kMethod;
    }
    entities.push_back(std::move(entity));
    return entities.size() - 1;
  }
};

// True when the `{` at `brace` opens the body of a nested callable.
auto opens_function_body(Matcher const& m, std::size_t brace) -> bool {
  if (brace == 0) return false;
  auto j = brace - 1;
  if (m.is(j, "=>") || m.is(j, "->")) return true;
  if (!m.is(j, ")")) {
    auto k = j;
    while (k > 0 && (m.ident(k) || m.is(k, ".") || m.is(k, "<") ||
                     m.is(k, ">") || m.is(k, "[") || m.is(k, "]") ||
                     m.is(k, ",") || m.is(k, "|") || m.is(k, "&") ||
                     m.is(k, "?"))) {
      if (m.is(k, "throws") && m.is(k - 1, ")")) break;
      --k;
    }
    if (m.is(k, "throws") && k > 0 && m.is(k - 1, ")")) {
      j = k - 1;
    } else if (m.is(k, ":") && k > 0 && m.is(k - 1, ")")) {
      j = k - 1;
    } else {
      return false;
    }
  }
  auto const open = m.partner(j);
  if (open == kNpos || open == 0) return false;
  auto const before = open - 1;
  if (!m.ident(before)) return false;
  return !kControl.contains(m.at(before));
}

// Walks `body` calling `visit(index)` for every token outside nested
// callables and classes. The first `{` of the body is never treated as nested.
template <typename Visit>
void for_each_own_token(std::string_view body, Visit&& visit) {
  auto const lexed = jsdoc::lex(body);
  Matcher const m{body, lexed};
  auto const& toks = lexed.tokens;
  for (std::size_t i = 0; i < toks.size(); ++i) {
    if (i > 0 && m.is(i, "{") && toks[i].kind == TokenKind::kPunct) {
      bool nested = opens_function_body(m, i);
      if (!nested) {
        // class bodies: look back for `class Name ... {`
        for (auto k = i; k-- > 0;) {
          if (m.is(k, ";") || m.is(k, "{") || m.is(k, "}")) break;
          if (m.is(k, "class")) {
            nested = true;
            break;
          }
        }
      }
      if (nested && m.partner(i) != kNpos) {
        i = m.partner(i);
        continue;
      }
    }
    if (visit(m, toks, i)) return;
  }
}

}  // namespace

auto parse_jsdoc(SourceUnit const& unit) -> std::vector<CodeEntity> {
  auto const text = unit.content();
  auto const lexed = jsdoc::lex(text);
  Walker walker{unit, text, lexed, Matcher{text, lexed}, {}};
  walker.visit(0, lexed.tokens.size(), Scope::kTop, std::nullopt);
  return std::move(walker.entities);
}

auto parse_jsdoc_signature(std::string_view header) -> Signature {
  std::string text{header};
  text += " {}";
  auto const lexed = jsdoc::lex(text);
  Matcher const m{text, lexed};
  auto decl = m.match(0, Scope::kAny);
  if (!decl) {
    // plain function headers are tried with the top-level rules as well
    decl = m.match(0, Scope::kTop);
  }
  if (!decl || decl->kind == EntityKind::kClass) {
    if (decl) return Signature{};
    throw SignatureParseError("not a declaration header");
  }
  return build_signature(text, lexed, *decl);
}

auto jsdoc_raises(std::string_view body) -> std::vector<std::string> {
  std::vector<std::string> names;
  for_each_own_token(body, [&](Matcher const& m, std::vector<Token> const&,
                               std::size_t i) {
    if (!m.is(i, "throw") || !m.is(i + 1, "new") || !m.ident(i + 2)) return false;
    std::string name{m.at(i + 2)};
    auto k = i + 3;
    while (m.is(k, ".") && m.ident(k + 1)) {
      name += ".";
      name += m.at(k + 1);
      k += 2;
    }
    if (std::find(names.begin(), names.end(), name) == names.end()) {
      names.push_back(std::move(name));
    }
    return false;
  });
  return names;
}

auto jsdoc_returns(std::string_view body) -> bool {
  bool found = false;
  for_each_own_token(body, [&](Matcher const& m, std::vector<Token> const& toks,
                               std::size_t i) {
    if (!m.is(i, "return") || !m.ident(i)) return false;
    auto const next = i + 1;
    // `return` followed by a line break returns undefined
    if (next >= toks.size() || toks[next].newline_before || m.is(next, ";") ||
        m.is(next, "}")) {
      return false;
    }
    found = true;
    return true;
  });
  return found;
}

}  // namespace autodoc::detail
