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


#include "autodoc/patcher.hpp"

#include <algorithm>
#include <map>

#include "text_util.hpp"

namespace autodoc {

namespace {

auto to_crlf(std::string_view text) -> std::string {
  std::string out;
  out.reserve(text.size() + text.size() / 16);
  for (char c : text) {
    if (c == '\n') out += '\r';
    out += c;
  }
  return out;
}

auto replace_all(std::string text, std::string_view from, std::string_view to)
    -> std::string {
  std::size_t pos = 0;
  while ((pos = text.find(from, pos)) != std::string::npos) {
    text.replace(pos, from.size(), to);
    pos += to.size();
  }
  return text;
}

// Letters of a python string prefix worth keeping on a docstring.
auto string_prefix(std::string_view delimiter) -> std::string {
  std::string out;
  for (char c : delimiter) {
    if (c == 'r' || c == 'R' || c == 'u' || c == 'U') out += c;
  }
  return out;
}

// Lines with their terminators, so a missing final newline is visible.
auto split_keep(std::string_view text) -> std::vector<std::string_view> {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (start < text.size()) {
    auto const nl = text.find('\n', start);
    auto const end = nl == std::string_view::npos ? text.size() : nl + 1;
    out.push_back(text.substr(start, end - start));
    start = end;
  }
  return out;
}

enum class OpKind { kEqual, kDelete, kInsert };

struct Op {
  OpKind kind;
  std::size_t a;  // index into old lines (position for inserts)
  std::size_t b;  // index into new lines (position for deletes)
};

// Myers' O(ND) shortest edit script.
auto diff_lines(std::vector<std::string_view> const& a,
                std::vector<std::string_view> const& b) -> std::vector<Op> {
  auto const n = static_cast<long>(a.size());
  auto const m = static_cast<long>(b.size());
  auto const max = n + m;
  auto const offset = max + 1;
  std::vector<long> v(static_cast<std::size_t>(2 * max + 3), 0);
  std::vector<std::vector<long>> trace;
  auto at = [&](std::vector<long>& vec, long k) -> long& {
    return vec[static_cast<std::size_t>(k + offset)];
  };
  bool done = false;
  for (long d = 0; d <= max && !done; ++d) {
    trace.push_back(v);
    for (long k = -d; k <= d; k += 2) {
      long x = (k == -d || (k != d && at(v, k - 1) < at(v, k + 1))) ? at(v, k + 1)
                                                                    : at(v, k - 1) + 1;
      long y = x - k;
      while (x < n && y < m && a[static_cast<std::size_t>(x)] == b[static_cast<std::size_t>(y)]) {
        ++x;
        ++y;
      }
      at(v, k) = x;
      if (x >= n && y >= m) {
        done = true;
        break;
      }
    }
  }

  std::vector<Op> ops;
  long x = n;
  long y = m;
  for (long d = static_cast<long>(trace.size()) - 1; d >= 0; --d) {
    auto& vd = trace[static_cast<std::size_t>(d)];
    auto const k = x - y;
    auto const prev_k =
        (k == -d || (k != d && at(vd, k - 1) < at(vd, k + 1))) ? k + 1 : k - 1;
    auto const prev_x = at(vd, prev_k);
    auto const prev_y = prev_x - prev_k;
    while (x > prev_x && y > prev_y) {
      --x;
      --y;
      ops.push_back(Op{OpKind::kEqual, static_cast<std::size_t>(x), static_cast<std::size_t>(y)});
    }
    if (d > 0) {
      if (x == prev_x) {
        ops.push_back(Op{OpKind::kInsert, static_cast<std::size_t>(x),
                         static_cast<std::size_t>(prev_y)});
      } else {
        ops.push_back(Op{OpKind::kDelete, static_cast<std::size_t>(prev_x),
                         static_cast<std::size_t>(y)});
      }
    }
    x = prev_x;
    y = prev_y;
  }
  std::reverse(ops.begin(), ops.end());
  return ops;
}

void emit_line(std::string& out, char mark, std::string_view line) {
  out += mark;
  if (line.ends_with('\n')) {
    out += line;
  } else {
    out += line;
    out += "\n\\ No newline at end of file\n";
  }
}

auto range_text(std::size_t start, std::size_t count) -> std::string {
  if (count == 1) return std::to_string(start + 1);
  if (count == 0) return std::to_string(start) + ",0";
  return std::to_string(start + 1) + "," + std::to_string(count);
}

}  // namespace

auto python_quote(std::string_view body, std::string_view preferred)
    -> std::pair<std::string, std::string> {
  std::string first{preferred == "'''" ? "'''" : "\"\"\""};
  std::string second{first == "\"\"\"" ? "'''" : "\"\"\""};
  for (auto const& quote : {first, second}) {
    if (body.find(quote) == std::string_view::npos && !body.ends_with(quote.front())) {
      return {quote, std::string{body}};
    }
  }
  auto escaped = replace_all(std::string{body}, "\"\"\"", "\\\"\\\"\\\"");
  if (escaped.ends_with('"') && !escaped.ends_with("\\\"")) {
    escaped.insert(escaped.size() - 1, "\\");
  }
  return {"\"\"\"", std::move(escaped)};
}

auto encode_literal(std::string_view rendered, Language language, std::string_view indent,
                    std::string_view prefix, std::string_view preferred_quote) -> std::string {
  bool const multi = rendered.find('\n') != std::string_view::npos;
  if (language == Language::kJsdocFamily) {
    auto const body = replace_all(std::string{rendered}, "*/", "*\\/");
    if (!multi) return "/** " + body + " */";
    std::string out = "/**\n";
    out += indent;
    out += body.empty() || body.starts_with('\n') ? " *" : " * ";
    out += body;
    out += "\n";
    out += indent;
    out += " */";
    return out;
  }
  auto const [quote, body] = python_quote(rendered, preferred_quote);
  std::string out{prefix};
  out += quote;
  out += body;
  if (multi) {
    out += '\n';
    out += indent;
  }
  out += quote;
  return out;
}

auto plan_edits(ParsedSource const& parsed, std::vector<SynthesisOutcome> const& outcomes,
                Config const& config) -> std::vector<Edit> {
  auto const& unit = parsed.unit;
  auto const lang = unit.language();
  auto const style = config.style_for(lang);
  auto const content = unit.content();
  std::map<std::string, CodeEntity const*> by_id;
  for (auto const& e : parsed.entities) by_id.emplace(e.id, &e);

  std::vector<Edit> edits;
  for (auto const& outcome : outcomes) {
    if (outcome.applied.empty()) continue;
    auto const it = by_id.find(outcome.entity_id);
    if (it == by_id.end()) continue;
    auto const& entity = *it->second;
    if (auto const* doc = entity.doc_slot.existing()) {
      auto const rendered = render_docstring(outcome.new_ast, style, doc->indent);
      bool const py = lang == Language::kPython;
      bool const single = doc->delimiter.find('\'') != std::string::npos;
      auto literal = encode_literal(rendered, lang, doc->indent,
                                    py ? string_prefix(doc->delimiter) : std::string{},
                                    single ? "'''" : "\"\"\"");
      if (unit.newline_flavor() == NewlineFlavor::kCrlf) literal = to_crlf(literal);
      if (literal == unit.text(doc->span)) continue;
      edits.push_back(Edit{doc->span, std::move(literal), entity.id});
    } else if (auto const* ins = entity.doc_slot.insertion()) {
      if (!ins->whole_line) continue;
      if (ins->offset > 0 && content[ins->offset - 1] != '\n') continue;
      auto const rendered = render_docstring(outcome.new_ast, style, ins->indent);
      auto text = ins->indent + encode_literal(rendered, lang, ins->indent) + "\n";
      if (unit.newline_flavor() == NewlineFlavor::kCrlf) text = to_crlf(text);
      edits.push_back(Edit{ByteRange{ins->offset, ins->offset}, std::move(text), entity.id});
    }
  }
  std::stable_sort(edits.begin(), edits.end(), [](Edit const& a, Edit const& b) {
    return a.target.begin < b.target.begin;
  });
  return edits;
}

auto apply_edits(std::string_view content, std::vector<Edit> edits) -> std::string {
  std::stable_sort(edits.begin(), edits.end(), [](Edit const& a, Edit const& b) {
    return a.target.begin < b.target.begin;
  });
  for (std::size_t i = 0; i < edits.size(); ++i) {
    auto const& e = edits[i];
    if (e.target.end < e.target.begin || e.target.end > content.size()) {
      throw OverlapError("edit for " + e.entity_id + " lies outside the content");
    }
    if (i > 0) {
      auto const& prev = edits[i - 1];
      bool const clash = prev.target.end > e.target.begin ||
                         (prev.target.begin == e.target.begin &&
                          (prev.target.size() == 0 || e.target.size() == 0));
      if (clash) {
        throw OverlapError("edits for " + prev.entity_id + " and " + e.entity_id +
                           " overlap");
      }
    }
  }
  std::string out;
  out.reserve(content.size());
  std::size_t pos = 0;
  for (auto const& e : edits) {
    out.append(content.substr(pos, e.target.begin - pos));
    out += e.replacement;
    pos = e.target.end;
  }
  out.append(content.substr(pos));
  return out;
}

auto render_diff(std::string_view old_text, std::string_view new_text, std::string_view path)
    -> std::string {
  validate_utf8(old_text);
  validate_utf8(new_text);
  if (old_text == new_text) return {};
  auto const a = split_keep(old_text);
  auto const b = split_keep(new_text);
  auto const ops = diff_lines(a, b);
  constexpr std::size_t kContext = 3;

  std::vector<std::size_t> changes;
  for (std::size_t i = 0; i < ops.size(); ++i) {
    if (ops[i].kind != OpKind::kEqual) changes.push_back(i);
  }

  while (path.starts_with('/')) path.remove_prefix(1);
  std::string out = "--- a/" + std::string{path} + "\n+++ b/" + std::string{path} + "\n";
  std::size_t c = 0;
  while (c < changes.size()) {
    auto const first = changes[c];
    auto last = first;
    while (c + 1 < changes.size() && changes[c + 1] - last <= 2 * kContext + 1) {
      last = changes[++c];
    }
    ++c;
    auto const begin = first >= kContext ? first - kContext : 0;
    auto const end = std::min(ops.size(), last + kContext + 1);

    std::size_t old_count = 0;
    std::size_t new_count = 0;
    for (auto i = begin; i < end; ++i) {
      if (ops[i].kind != OpKind::kInsert) ++old_count;
      if (ops[i].kind != OpKind::kDelete) ++new_count;
    }
    out += "@@ -" + range_text(ops[begin].a, old_count) + " +" +
           range_text(ops[begin].b, new_count) + " @@\n";
    for (auto i = begin; i < end; ++i) {
      switch (ops[i].kind) {
        case OpKind::kEqual:
          emit_line(out, ' ', a[ops[i].a]);
          break;
        case OpKind::kDelete:
          emit_line(out, '-', a[ops[i].a]);
          break;
        case OpKind::kInsert:
          emit_line(out, '+', b[ops[i].b]);
          break;
      }
    }
  }
  return out;
}

}  // namespace autodoc
