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


#include <string>
#include <vector>

#include "autodoc/source_model.hpp"
#include "doctest.h"

using namespace autodoc;

namespace {

auto py(std::string content) -> ParsedSource {
  return parse_source("m.py", std::move(content), Language::kPython);
}

auto js(std::string content, std::string path = "m.ts") -> ParsedSource {
  return parse_source(std::move(path), std::move(content), Language::kJsdocFamily);
}

auto names(ParsedSource const& p) -> std::vector<std::string> {
  std::vector<std::string> out;
  for (auto const& e : p.entities) {
    if (e.kind != EntityKind::kModule) out.push_back(e.qualified_name);
  }
  return out;
}

auto find(ParsedSource const& p, std::string const& qname) -> CodeEntity const& {
  for (auto const& e : p.entities) {
    if (e.qualified_name == qname) return e;
  }
  FAIL("entity not found: " << qname);
  throw 0;
}

void check_slot_fidelity(ParsedSource const& p) {
  std::vector<ByteRange> spans;
  for (auto const& e : p.entities) {
    if (auto const* doc = e.doc_slot.existing()) {
      CHECK(doc->encode() == p.unit.text(doc->span));
      for (auto const& s : spans) CHECK_FALSE(s.overlaps(doc->span));
      spans.push_back(doc->span);
    }
  }
}

}  // namespace

TEST_CASE("simple function gets an insertion point on the body line") {
  auto const p = py("def f():\n    pass\n");
  REQUIRE(names(p) == std::vector<std::string>{"f"});
  auto const& f = find(p, "f");
  CHECK(f.kind == EntityKind::kFunction);
  auto const* ins = f.doc_slot.insertion();
  REQUIRE(ins != nullptr);
  CHECK(ins->offset == 9);
  CHECK(ins->indent == "    ");
  CHECK(ins->whole_line);
}

TEST_CASE("existing docstring is located") {
  auto const p = py("def f():\n    \"\"\"Hi.\"\"\"\n");
  auto const* doc = find(p, "f").doc_slot.existing();
  REQUIRE(doc != nullptr);
  CHECK(doc->raw_text == "Hi.");
  CHECK(doc->delimiter == "\"\"\"");
  CHECK(doc->span.begin == 13);
  CHECK(doc->span.end == 22);
  check_slot_fidelity(p);
}

TEST_CASE("nested entities carry dotted names") {
  auto const p = py(
      "class C:\n"
      "    def m1(self):\n"
      "        def inner():\n"
      "            return 1\n"
      "        return inner\n"
      "\n"
      "    def m2(self, x):\n"
      "        pass\n");
  CHECK(names(p) == std::vector<std::string>{"C", "C.m1", "C.m1.inner", "C.m2"});
  CHECK(find(p, "C").kind == EntityKind::kClass);
  CHECK(find(p, "C.m1").kind == EntityKind::kMethod);
  CHECK(find(p, "C.m1.inner").kind == EntityKind::kFunction);
  CHECK(find(p, "C.m2").signature.is_method);
}

TEST_CASE("module entity slot follows shebang and coding lines") {
  auto const p = py("#!/usr/bin/env python\n# -*- coding: utf-8 -*-\nimport os\n");
  REQUIRE(!p.entities.empty());
  auto const& m = p.entities.front();
  CHECK(m.kind == EntityKind::kModule);
  auto const* ins = m.doc_slot.insertion();
  REQUIRE(ins != nullptr);
  CHECK(ins->offset == 46);

  auto const q = py("\"\"\"Module doc.\"\"\"\nimport os\n");
  auto const* doc = q.entities.front().doc_slot.existing();
  REQUIRE(doc != nullptr);
  CHECK(doc->raw_text == "Module doc.");
}

TEST_CASE("python signatures") {
  auto const s = parse_signature("def f(a, b=1, *args, c, **kw):", Language::kPython);
  REQUIRE(s.params.size() == 5);
  CHECK(s.params[0] == Param{"a", ParamKind::kPositional, {}, {}});
  CHECK(s.params[1] == Param{"b", ParamKind::kPositional, "1", {}});
  CHECK(s.params[2] == Param{"args", ParamKind::kVarPositional, {}, {}});
  CHECK(s.params[3] == Param{"c", ParamKind::kKeywordOnly, {}, {}});
  CHECK(s.params[4] == Param{"kw", ParamKind::kVarKeyword, {}, {}});

  CHECK(parse_signature("def f():", Language::kPython).params.empty());

  auto const t = parse_signature("def f(x: int = 0) -> str:", Language::kPython);
  REQUIRE(t.params.size() == 1);
  CHECK(t.params[0].annotation_text == "int");
  CHECK(t.params[0].default_text == "0");
  CHECK(t.returns_annotation == "str");

  auto const u = parse_signature(
      "async def g(a: dict[str, int] = {'k': (1, 2)}, /, *, b='x,y') -> None:",
      Language::kPython);
  REQUIRE(u.params.size() == 2);
  CHECK(u.params[0].annotation_text == "dict[str, int]");
  CHECK(u.params[0].default_text == "{'k': (1, 2)}");
  CHECK(u.params[1].kind == ParamKind::kKeywordOnly);
  CHECK(u.params[1].default_text == "'x,y'");

  CHECK_THROWS_AS((void)parse_signature("def f(a, a):", Language::kPython),
                  SignatureParseError);
  CHECK_THROWS_AS((void)parse_signature("def f(*a, *b):", Language::kPython),
                  SignatureParseError);
}

TEST_CASE("method keeps self and is flagged") {
  auto const p = py("class K:\n    def m(self, a):\n        return a\n");
  auto const& m = find(p, "K.m");
  REQUIRE(m.signature.params.size() == 2);
  CHECK(m.signature.params[0].name == "self");
  CHECK(m.signature.is_method);
}

TEST_CASE("scan_raises") {
  CHECK(scan_raises("    raise ValueError(\"x\")\n", Language::kPython) ==
        std::vector<std::string>{"ValueError"});
  CHECK(scan_raises("    # raise KeyError\n    pass\n", Language::kPython).empty());
  CHECK(scan_raises("    def inner():\n        raise KeyError\n    return 1\n",
                    Language::kPython)
            .empty());
  CHECK(scan_raises("    try:\n        pass\n    except E:\n        raise\n",
                    Language::kPython)
            .empty());
  CHECK(scan_raises("    s = 'raise X'\n    raise errors.Bad from e\n",
                    Language::kPython) == std::vector<std::string>{"errors.Bad"});
  CHECK(scan_raises("  throw new RangeError('x');\n", Language::kJsdocFamily) ==
        std::vector<std::string>{"RangeError"});
}

TEST_CASE("scan_returns") {
  CHECK(scan_returns("    return a + b\n", Language::kPython));
  CHECK_FALSE(scan_returns("    return\n", Language::kPython));
  CHECK_FALSE(scan_returns("    for x in y:\n        yield x\n", Language::kPython));
  CHECK_FALSE(scan_returns("    def g():\n        return 1\n    g()\n",
                           Language::kPython));
  CHECK_FALSE(scan_returns("    x = '''\n    return 1\n    '''\n", Language::kPython));
  CHECK(scan_returns("  return x;\n", Language::kJsdocFamily));
  CHECK_FALSE(scan_returns("  return;\n", Language::kJsdocFamily));
  CHECK_FALSE(scan_returns("  items.map(function (x) { return x * 2; });\n",
                           Language::kJsdocFamily));
}

TEST_CASE("adversarial strings do not confuse the scanner") {
  auto const p = py(
      "x = 'def fake():'\n"
      "y = \"\"\"\n"
      "def also_fake():\n"
      "    pass\n"
      "\"\"\"\n"
      "z = rb'\\x00' + f\"{'}'}\" + f'''{x!r:>{10}}'''\n"
      "def real(a, b='\\'', c=\"#\"):  # comment: def nope():\n"
      "    r'''Raw doc with \\d.'''\n"
      "    return (a +\n"
      "        b)\n"
      "\n"
      "@decorator(arg=')')\n"
      "def decorated(\n"
      "        a,\n"
      "        b):\n"
      "    return \\\n"
      "        a\n");
  CHECK(names(p) == std::vector<std::string>{"real", "decorated"});
  auto const* doc = find(p, "real").doc_slot.existing();
  REQUIRE(doc != nullptr);
  CHECK(doc->delimiter == "r'''");
  CHECK(doc->raw_text == "Raw doc with \\d.");
  auto const& d = find(p, "decorated");
  CHECK(d.signature.params.size() == 2);
  check_slot_fidelity(p);
}

TEST_CASE("single-line bodies cannot take whole-line insertions") {
  auto const p = py("def f(): pass\n");
  auto const* ins = find(p, "f").doc_slot.insertion();
  REQUIRE(ins != nullptr);
  CHECK_FALSE(ins->whole_line);
}

TEST_CASE("crlf content") {
  auto const p = py("def f():\r\n    \"\"\"Doc.\"\"\"\r\n    return 1\r\n");
  CHECK(p.unit.newline_flavor() == NewlineFlavor::kCrlf);
  auto const* doc = find(p, "f").doc_slot.existing();
  REQUIRE(doc != nullptr);
  CHECK(doc->raw_text == "Doc.");
  check_slot_fidelity(p);
}

TEST_CASE("line offsets") {
  SourceUnit const u{"a.py", Language::kPython, "ab\ncd\n\nef"};
  CHECK(u.line_offsets() == std::vector<std::size_t>{0, 3, 6, 7});
  CHECK(u.line_of(0) == 1);
  CHECK(u.line_of(4) == 2);
  CHECK(u.line_of(8) == 4);
}

TEST_CASE("errors") {
  CHECK_THROWS_AS((void)py(std::string{"x = '\xff'\n"}), EncodingError);
  CHECK_THROWS_AS((void)py("x = '''never closed\n"), ParseError);
  CHECK_THROWS_AS((void)py("x = (1,\n"), ParseError);
  CHECK_THROWS_AS((void)js("function f() {\n"), ParseError);
}

TEST_CASE("jsdoc family entities and slots") {
  auto const p = js(
      "/**\n"
      " * Adds numbers.\n"
      " * @param a first\n"
      " */\n"
      "export function add(a: number, b = 2): number {\n"
      "  const re = /}/g;\n"
      "  const t = `${a + `}`}`;\n"
      "  return a + b;\n"
      "}\n"
      "\n"
      "export class Box {\n"
      "  /** Gets it. */\n"
      "  get(key: string, ...rest: string[]): string {\n"
      "    return key;\n"
      "  }\n"
      "\n"
      "  private helper = (x) => {\n"
      "    return x;\n"
      "  };\n"
      "}\n"
      "\n"
      "const mul = function (x, y) {\n"
      "  return x * y;\n"
      "};\n");
  CHECK(names(p) == std::vector<std::string>{"add", "Box", "Box.get", "Box.helper", "mul"});
  auto const& add = find(p, "add");
  auto const* doc = add.doc_slot.existing();
  REQUIRE(doc != nullptr);
  CHECK(doc->delimiter == "/**");
  CHECK(doc->span.begin == 0);
  REQUIRE(add.signature.params.size() == 2);
  CHECK(add.signature.params[0].annotation_text == "number");
  CHECK(add.signature.params[1].default_text == "2");
  CHECK(add.signature.returns_annotation == "number");
  auto const& get = find(p, "Box.get");
  CHECK(get.kind == EntityKind::kMethod);
  REQUIRE(get.signature.params.size() == 2);
  CHECK(get.signature.params[1].kind == ParamKind::kVarPositional);
  REQUIRE(get.doc_slot.existing() != nullptr);
  CHECK(get.doc_slot.existing()->raw_text == " Gets it. ");
  auto const* ins = find(p, "Box").doc_slot.insertion();
  REQUIRE(ins != nullptr);
  CHECK(ins->indent == "");
  check_slot_fidelity(p);
}

TEST_CASE("java methods") {
  auto const p = js(
      "package x;\n"
      "\n"
      "public class Calc {\n"
      "    /**\n"
      "     * Divides.\n"
      "     */\n"
      "    @Override\n"
      "    public static int divide(final int a, int... rest) throws ArithmeticException {\n"
      "        if (rest.length == 0) throw new IllegalArgumentException(\"no\");\n"
      "        return a / rest[0];\n"
      "    }\n"
      "\n"
      "    private String text = \"}\";\n"
      "\n"
      "    public Calc(String name) {\n"
      "    }\n"
      "}\n",
      "Calc.java");
  CHECK(names(p) == std::vector<std::string>{"Calc", "Calc.divide", "Calc.Calc"});
  auto const& d = find(p, "Calc.divide");
  REQUIRE(d.signature.params.size() == 2);
  CHECK(d.signature.params[0].name == "a");
  CHECK(d.signature.params[1].name == "rest");
  CHECK(d.signature.params[1].kind == ParamKind::kVarPositional);
  CHECK(d.signature.returns_annotation == "int");
  REQUIRE(d.doc_slot.existing() != nullptr);
  CHECK(scan_raises(p.unit.text(d.body_span), Language::kJsdocFamily) ==
        std::vector<std::string>{"IllegalArgumentException"});
  auto const* ins = find(p, "Calc.Calc").doc_slot.insertion();
  REQUIRE(ins != nullptr);
  CHECK(ins->indent == "    ");
}

TEST_CASE("parse is deterministic") {
  std::string const src = "class A:\n    def b(self):\n        '''x'''\n";
  auto const p1 = py(src);
  auto const p2 = py(src);
  REQUIRE(p1.entities.size() == p2.entities.size());
  for (std::size_t i = 0; i < p1.entities.size(); ++i) {
    CHECK(p1.entities[i].id == p2.entities[i].id);
    CHECK(p1.entities[i].header_span == p2.entities[i].header_span);
  }
}
