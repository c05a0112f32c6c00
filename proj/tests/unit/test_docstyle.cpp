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
#include <ostream>
#include <random>
#include <string>
#include <vector>

#include "autodoc/docstyle.hpp"
#include "doctest.h"
#include "support/doc_gen.hpp"
#include "support/reference_docparser.hpp"

using namespace autodoc;

namespace reference {
auto operator<<(std::ostream& os, Entry const& e) -> std::ostream& {
  return os << "{" << e.name << "|" << e.type << "|" << e.desc << "}";
}
auto operator<<(std::ostream& os, std::vector<Entry> const& v) -> std::ostream& {
  for (auto const& e : v) os << e;
  return os;
}
}  // namespace reference

namespace autodoc {
auto operator<<(std::ostream& os, DocAst const& ast) -> std::ostream& {
  for (auto const& b : ast.blocks) {
    std::visit(
        [&](auto const& x) {
          using T = std::decay_t<decltype(x)>;
          if constexpr (std::is_same_v<T, SummaryBlock>) os << "[S " << x.text << "]";
          if constexpr (std::is_same_v<T, DescriptionBlock>) os << "[D " << x.text << "]";
          if constexpr (std::is_same_v<T, OpaqueBlock>) os << "[O " << x.verbatim << "]";
          if constexpr (std::is_same_v<T, ReturnsSection>) {
            os << "[R " << x.type_text << "|" << x.desc << "]";
          }
          if constexpr (std::is_same_v<T, ParamSection>) {
            os << "[P";
            for (auto const& i : x.items) os << " {" << i.name << "|" << i.type_text << "|" << i.desc << "}";
            os << "]";
          }
          if constexpr (std::is_same_v<T, RaisesSection>) {
            os << "[X";
            for (auto const& i : x.items) os << " {" << i.type_text << "|" << i.desc << "}";
            os << "]";
          }
        },
        b);
  }
  return os;
}
}  // namespace autodoc

namespace {

constexpr std::array<DocStyle, 4> kStyles{DocStyle::kRest, DocStyle::kGoogle,
                                          DocStyle::kNumpy, DocStyle::kJavadoc};

// Projects a DocAst onto the reference parser's shape.
auto project(DocAst const& ast) -> reference::Doc {
  reference::Doc doc;
  if (auto const* s = ast.summary()) doc.summary = s->text;
  if (auto const* p = ast.params()) {
    for (auto const& item : p->items) {
      doc.params.push_back({item.name, item.type_text, reference::squash(item.desc)});
    }
  }
  if (auto const* r = ast.returns()) {
    doc.returns = reference::Entry{"", r->type_text, reference::squash(r->desc)};
  }
  if (auto const* r = ast.raises()) {
    for (auto const& item : r->items) {
      doc.raises.push_back({"", item.type_text, reference::squash(item.desc)});
    }
  }
  for (auto const& b : ast.blocks) {
    std::string text;
    if (auto const* d = std::get_if<DescriptionBlock>(&b)) text = d->text;
    if (auto const* o = std::get_if<OpaqueBlock>(&b)) text = o->verbatim;
    for (auto const& l : reference::lines_of(text)) {
      if (!reference::blank(l)) doc.other.push_back(reference::trimmed(l));
    }
  }
  return doc;
}

void check_against_reference(std::string const& raw, DocStyle style) {
  auto const ours = project(parse_docstring(raw, style));
  auto const ref = reference::parse(raw, std::string{to_string(style)});
  INFO("style: " << to_string(style) << "\n" << raw);
  CHECK(ours.summary == ref.summary);
  CHECK(ours.params == ref.params);
  CHECK(ours.returns.has_value() == ref.returns.has_value());
  if (ours.returns && ref.returns) CHECK(*ours.returns == *ref.returns);
  CHECK(ours.raises == ref.raises);
  CHECK(ours.other == ref.other);
}

}  // namespace

TEST_CASE("detect_style markers") {
  CHECK(detect_style("Sum.\n\n:param a: x").style == DocStyle::kRest);
  CHECK(detect_style("Sum.\n\nArgs:\n    a: x").style == DocStyle::kGoogle);
  CHECK(detect_style("").style == DocStyle::kUnknown);
  CHECK(detect_style("Sum.\n\nParameters\n----------\na : int\n").style ==
        DocStyle::kNumpy);
  CHECK(detect_style("\n * Sum.\n * @param a x\n ").style == DocStyle::kJavadoc);
  // A tie goes to the earlier style in the fixed order.
  auto const tie = detect_style("Args:\n    a: b\n\n@param a b");
  CHECK(tie.scores[1] == 1);
  CHECK(tie.scores[3] == 1);
  CHECK(tie.style == DocStyle::kGoogle);
}

TEST_CASE("parse the reST example") {
  auto const ast = parse_docstring(
      "Return the sum.\n\n:param a: first addend\n:param b: second addend\n:returns: the sum");
  REQUIRE(ast.blocks.size() == 3);
  CHECK(ast.style_detected == DocStyle::kRest);
  CHECK(ast.summary()->text == "Return the sum.");
  CHECK(ast.params()->items ==
        std::vector<DocParam>{{"a", "", "first addend"}, {"b", "", "second addend"}});
  CHECK(ast.returns()->desc == "the sum");
  CHECK(ast.returns()->type_text.empty());
}

TEST_CASE("empty docstring has no blocks") {
  CHECK(parse_docstring("").blocks.empty());
  CHECK(parse_docstring("   \n  ").blocks.empty());
}

TEST_CASE("numpy with a custom section keeps it opaque") {
  std::string const raw =
      "Compute things.\n"
      "\n"
      "    Parameters\n"
      "    ----------\n"
      "    x : int\n"
      "        The input.\n"
      "    y, z : float, optional\n"
      "        Scales.\n"
      "\n"
      "    Raises\n"
      "    ------\n"
      "    ValueError\n"
      "        If bad.\n"
      "\n"
      "    Notes\n"
      "    -----\n"
      "    Some notes here.\n"
      "    ";
  auto const ast = parse_docstring(raw);
  CHECK(ast.style_detected == DocStyle::kNumpy);
  REQUIRE(ast.params() != nullptr);
  CHECK(ast.params()->items.size() == 3);
  CHECK(ast.params()->items[2] == DocParam{"z", "float, optional", "Scales."});
  REQUIRE(ast.raises() != nullptr);
  CHECK(ast.raises()->items == std::vector<RaisesItem>{{"ValueError", "If bad."}});
  REQUIRE(std::holds_alternative<OpaqueBlock>(ast.blocks.back()));
  CHECK(std::get<OpaqueBlock>(ast.blocks.back()).verbatim ==
        "Notes\n-----\nSome notes here.");
  check_against_reference(raw, DocStyle::kNumpy);
}

TEST_CASE("google sections with types and continuations") {
  std::string const raw =
      "Fetch rows.\n\n"
      "    Longer text.\n\n"
      "    Args:\n"
      "        table (str): Name of the\n"
      "            table.\n"
      "        keys (Sequence[Tuple[int, str]]): Keys.\n"
      "        **kwargs: Extra.\n\n"
      "    Returns:\n"
      "        dict: Mapping of rows.\n\n"
      "    Raises:\n"
      "        IOError: On failure.\n\n"
      "    Example:\n"
      "        fetch('t')\n";
  auto const ast = parse_docstring(raw);
  CHECK(ast.style_detected == DocStyle::kGoogle);
  REQUIRE(ast.params() != nullptr);
  CHECK(ast.params()->items[0] == DocParam{"table", "str", "Name of the\ntable."});
  CHECK(ast.params()->items[1].type_text == "Sequence[Tuple[int, str]]");
  CHECK(ast.params()->items[2].name == "**kwargs");
  CHECK(ast.returns()->type_text == "dict");
  CHECK(ast.returns()->desc == "Mapping of rows.");
  check_against_reference(raw, DocStyle::kGoogle);
}

TEST_CASE("placeholder returns text is not read as a type") {
  auto const ast = parse_docstring("Sum.\n\nReturns:\n    TODO: describe.", DocStyle::kGoogle);
  CHECK(ast.returns()->type_text.empty());
  CHECK(ast.returns()->desc == "TODO: describe.");
}

TEST_CASE("javadoc gutters and tags") {
  std::string const raw =
      "\n"
      "     * Divides two numbers.\n"
      "     *\n"
      "     * <p>Integer division.\n"
      "     * @param a the dividend\n"
      "     * @param {number} b the divisor,\n"
      "     *     never zero\n"
      "     * @return the quotient\n"
      "     * @throws ArithmeticException when b is zero\n"
      "     * @since 1.2\n"
      "     ";
  auto const ast = parse_docstring(raw);
  CHECK(ast.style_detected == DocStyle::kJavadoc);
  CHECK(ast.summary()->text == "Divides two numbers.");
  REQUIRE(ast.params() != nullptr);
  CHECK(ast.params()->items[1] == DocParam{"b", "number", "the divisor,\nnever zero"});
  CHECK(ast.returns()->desc == "the quotient");
  CHECK(ast.raises()->items ==
        std::vector<RaisesItem>{{"ArithmeticException", "when b is zero"}});
  check_against_reference(raw, DocStyle::kJavadoc);
}

TEST_CASE("malformed sections degrade to text") {
  auto const ast = parse_docstring("Sum.\n\nArgs:\n    this is not an item\n", DocStyle::kGoogle);
  CHECK(ast.params() == nullptr);
  CHECK(ast.degraded == std::vector<std::string>{"Args:"});
  REQUIRE(ast.blocks.size() == 2);
  CHECK(std::get<DescriptionBlock>(ast.blocks[1]).text == "Args:\n    this is not an item");

  auto const rest = parse_docstring("Sum.\n\n:param: nothing named\n", DocStyle::kRest);
  CHECK(rest.params() == nullptr);
  CHECK(rest.degraded.size() == 1);
}

TEST_CASE("render minimal and converted docstrings") {
  DocAst hi;
  hi.blocks.emplace_back(SummaryBlock{"Hi."});
  CHECK(render_docstring(hi, DocStyle::kGoogle, "    ") == "Hi.");

  auto const ast = parse_docstring(
      "Return the sum.\n\n:param a: first addend\n:param b: second addend\n:returns: the sum");
  auto const google = render_docstring(ast, DocStyle::kGoogle, "");
  CHECK(google ==
        "Return the sum.\n\nArgs:\n    a: first addend\n    b: second addend\n\n"
        "Returns:\n    the sum");
  check_against_reference(google, DocStyle::kGoogle);
  CHECK(canonicalize(parse_docstring(google, DocStyle::kGoogle)) == canonicalize(ast));

  auto const indented = render_docstring(ast, DocStyle::kRest, "    ");
  CHECK(indented ==
        "Return the sum.\n\n    :param a: first addend\n    :param b: second addend\n\n"
        "    :returns: the sum");

  auto const javadoc = render_docstring(ast, DocStyle::kJavadoc, "  ");
  CHECK(javadoc ==
        "Return the sum.\n   *\n   * @param a first addend\n   * @param b second addend\n"
        "   *\n   * @return the sum");
  CHECK_THROWS_AS((void)render_docstring(ast, DocStyle::kUnknown, ""), UnrenderableStyle);
}

TEST_CASE("canonicalize merges, drops and is idempotent") {
  DocAst two;
  two.blocks.emplace_back(SummaryBlock{"S."});
  two.blocks.emplace_back(ParamSection{{{"a", "", "x"}}});
  two.blocks.emplace_back(OpaqueBlock{"  \n "});
  two.blocks.emplace_back(ParamSection{{{"b", "", "y"}}});
  auto const c = canonicalize(two);
  REQUIRE(c.blocks.size() == 2);
  CHECK(std::get<ParamSection>(c.blocks[1]).items ==
        std::vector<DocParam>{{"a", "", "x"}, {"b", "", "y"}});
  CHECK(canonicalize(c) == c);

  DocAst spaced;
  spaced.blocks.emplace_back(SummaryBlock{"S."});
  spaced.blocks.emplace_back(DescriptionBlock{"one   \n\n\n\ntwo  "});
  CHECK(std::get<DescriptionBlock>(canonicalize(spaced).blocks[1]).text == "one\n\ntwo");
}

TEST_CASE("round trip over generated docstrings in every style") {
  gen::AstGen gen{20261015};
  int checked = 0;
  for (auto style : kStyles) {
    for (int i = 0; i < 60; ++i) {
      auto const ast = gen.make(style);
      for (auto indent : {"", "    "}) {
        auto const rendered = render_docstring(ast, style, indent);
        INFO(to_string(style) << " #" << i << "\n" << rendered);
        auto const back = parse_docstring(rendered, style);
        CHECK(back.degraded.empty());
        CHECK(canonicalize(back) == canonicalize(ast));
        CHECK(rendered.find('\t') == std::string::npos);
        for (auto const& line : reference::lines_of(rendered)) {
          if (reference::blank(line)) CHECK(line.empty());
          CHECK((line.empty() || (line.back() != ' ' && line.back() != '\t')));
        }
        // Detection alone finds the style when any section exists.
        if (back.params() || back.returns() || back.raises()) {
          CHECK(detect_style(rendered).style == style);
        }
        check_against_reference(rendered, style);
        ++checked;
      }
    }
  }
  CHECK(checked >= 4 * 30);
}

TEST_CASE("cross-style conversion keeps entries") {
  gen::AstGen gen{7};
  for (int i = 0; i < 80; ++i) {
    auto const from = kStyles[static_cast<std::size_t>(i % 4)];
    auto const original = canonicalize(parse_docstring(
        render_docstring(gen.make(DocStyle::kJavadoc), from, ""), from));
    for (auto to : kStyles) {
      auto const converted =
          canonicalize(parse_docstring(render_docstring(original, to, "  "), to));
      INFO(to_string(from) << " -> " << to_string(to) << "\n" << original << "\n"
                           << converted << "\n" << render_docstring(original, to, "  "));
      auto const a = gen::entries(original);
      auto const b = gen::entries(converted);
      CHECK(a.params == b.params);
      CHECK(a.returns == b.returns);
      CHECK(a.raises == b.raises);
    }
  }
}

TEST_CASE("unrecognized lines survive parsing") {
  std::mt19937 rng{99};
  std::vector<std::string> const prose{
      "Plain words here.", "Another line, with a comma.", "Example:",
      "    >>> f(1)", "See also the manual.", ".. versionadded:: 2.0",
      "Warning", "-------", "Be careful.", "Args:", "    broken item without colon"};
  for (int round = 0; round < 50; ++round) {
    std::string raw = "Summary line.\n\n";
    std::vector<std::string> used;
    auto const n = 1 + static_cast<int>(rng() % 6);
    for (int k = 0; k < n; ++k) {
      auto const& line = prose[rng() % prose.size()];
      raw += line + "\n";
      used.push_back(line);
      if (rng() % 3 == 0) raw += "\n";
    }
    for (auto style : kStyles) {
      auto const ast = parse_docstring(raw, style);
      std::string all;
      for (auto const& b : ast.blocks) {
        if (auto const* s = std::get_if<SummaryBlock>(&b)) all += s->text + "\n";
        if (auto const* d = std::get_if<DescriptionBlock>(&b)) all += d->text + "\n";
        if (auto const* o = std::get_if<OpaqueBlock>(&b)) all += o->verbatim + "\n";
        if (auto const* p = std::get_if<ParamSection>(&b)) {
          for (auto const& item : p->items) all += item.name + " " + item.desc + "\n";
        }
      }
      for (auto const& line : used) {
        INFO(to_string(style) << "\n" << raw);
        CHECK(all.find(reference::trimmed(line)) != std::string::npos);
      }
    }
  }
}

TEST_CASE("detect_style is deterministic and total") {
  std::mt19937 rng{5};
  for (int i = 0; i < 200; ++i) {
    std::string raw;
    auto const len = rng() % 80;
    for (std::size_t k = 0; k < len; ++k) {
      raw += " \n:@-*aAP"[rng() % 9];
    }
    auto const a = detect_style(raw);
    auto const b = detect_style(raw);
    CHECK(a.style == b.style);
    CHECK(a.scores == b.scores);
    (void)parse_docstring(raw);
  }
}
