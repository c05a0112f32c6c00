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
#include <random>
#include <string>
#include <vector>

#include "autodoc/engine.hpp"
#include "autodoc/synthesizer.hpp"
#include "doctest.h"

using namespace autodoc;

namespace {

struct Fixture {
  ParsedSource parsed;
  std::vector<CodeEntity> entities;
  std::vector<EntityFacts> facts;

  explicit Fixture(std::string content, Config const& config = {})
      : parsed{parse_source("m.py", std::move(content), Language::kPython)},
        entities{effective_entities(parsed, config)} {
    for (auto const& e : entities) facts.push_back(gather_facts(parsed.unit, e));
  }

  [[nodiscard]] auto ctx(std::string const& qualified) const -> EntityContext {
    for (std::size_t i = 0; i < entities.size(); ++i) {
      if (entities[i].qualified_name == qualified) {
        return EntityContext{parsed.unit, entities[i], facts[i]};
      }
    }
    throw std::runtime_error("no entity " + qualified);
  }
};

// Provider that answers with fixed text, as a remote server would.
class CannedProvider : public SummaryProvider {
 public:
  explicit CannedProvider(std::string text) : SummaryProvider{SummaryConfig{}}, text_{std::move(text)} {}
  auto provide(SummaryRequest const&) -> Summarized override {
    return Summarized{SummaryResponse{text_, 0.9, "canned"}, SummarySource::kRemote, {}};
  }
  void set(std::string text) { text_ = std::move(text); }

 private:
  std::string text_;
};

auto descriptions(DocAst const& ast) -> std::vector<std::string> {
  std::vector<std::string> out;
  for (auto const& block : ast.blocks) {
    if (auto const* p = std::get_if<ParamSection>(&block)) {
      for (auto const& item : p->items) out.push_back(item.desc);
    } else if (auto const* r = std::get_if<ReturnsSection>(&block)) {
      out.push_back(r->desc);
    } else if (auto const* r = std::get_if<RaisesSection>(&block)) {
      for (auto const& item : r->items) out.push_back(item.desc);
    } else if (auto const* o = std::get_if<OpaqueBlock>(&block)) {
      out.push_back(o->verbatim);
    } else if (auto const* s = std::get_if<SummaryBlock>(&block)) {
      out.push_back(s->text);
    } else if (auto const* d = std::get_if<DescriptionBlock>(&block)) {
      out.push_back(d->text);
    }
  }
  return out;
}

auto corpus_files() -> std::vector<std::filesystem::path> {
  return discover_files({AUTODOC_CORPUS_DIR}, Config{}).files;
}

}  // namespace

TEST_CASE("synthesize_docstring: get_user_name") {
  Fixture f{"def get_user_name(user_id):\n    return user_id\n"};
  SummaryProvider provider{SummaryConfig{}};
  auto const out = synthesize_docstring(f.ctx("get_user_name"), provider, Config{});
  DocAst expected;
  expected.blocks = {SummaryBlock{"Get user name."},
                     ParamSection{{DocParam{"user_id", "", "TODO: describe."}}},
                     ReturnsSection{"", "TODO: describe."}};
  CHECK(out.new_ast == expected);
  CHECK(out.summary_source == SummarySource::kLocalBaseline);
  CHECK(out.applied == std::vector<RuleId>{RuleId::kAD001});
  CHECK(out.entity_id == "m.py:get_user_name");
}

TEST_CASE("synthesize_docstring: minimal, annotated, variadic, raising") {
  SummaryProvider provider{SummaryConfig{}};
  Fixture f{
      "def f():\n    pass\n"
      "def typed(a: int) -> list[str]:\n    return []\n"
      "def var(*args, **kwargs):\n    pass\n"
      "def boom(x):\n    raise ValueError(x)\n"};
  DocAst summary_only;
  summary_only.blocks = {SummaryBlock{"F."}};
  CHECK(synthesize_docstring(f.ctx("f"), provider, Config{}).new_ast == summary_only);
  auto const typed = synthesize_docstring(f.ctx("typed"), provider, Config{}).new_ast;
  REQUIRE(typed.returns() != nullptr);
  CHECK(typed.returns()->type_text == "list[str]");
  auto const var = synthesize_docstring(f.ctx("var"), provider, Config{}).new_ast;
  REQUIRE(var.params() != nullptr);
  CHECK(var.params()->items[0].name == "*args");
  CHECK(var.params()->items[1].name == "**kwargs");
  auto const boom = synthesize_docstring(f.ctx("boom"), provider, Config{}).new_ast;
  REQUIRE(boom.raises() != nullptr);
  CHECK(boom.raises()->items == std::vector<RaisesItem>{{"ValueError", "TODO: describe."}});
}

TEST_CASE("class and constructor are documented separately") {
  std::string const src =
      "\"\"\"M.\"\"\"\n"
      "class Point:\n"
      "    def __init__(self, x, y):\n"
      "        self.x = x\n"
      "        self.y = y\n";
  SummaryProvider provider{SummaryConfig{}};
  auto const result = process_source("m.py", src, Language::kPython, Config{}, provider,
                                     RunMode::kFix);
  auto const again = parse_source("m.py", result.updated, Language::kPython);
  auto const findings = analyze_unit(again, Config{});
  CHECK(std::none_of(findings.begin(), findings.end(),
                     [](Finding const& f) { return f.rule == RuleId::kAD101; }));
  for (auto const& e : again.entities) {
    if (e.qualified_name != "Point") continue;
    auto const ast = doc_ast_for(again.unit, e);
    REQUIRE(ast.has_value());
    CHECK(ast->params() == nullptr);
  }
}

TEST_CASE("apply_fixes examples") {
  Fixture f{
      "def f(a, b):\n"
      "    \"\"\"Do f.\n\n    :param a: Human a.\n    :param z: Human z.\n    \"\"\"\n"};
  SummaryProvider provider{SummaryConfig{}};
  auto const ctx = f.ctx("f");
  auto const ast = *doc_ast_for(f.parsed.unit, ctx.entity);
  auto const findings = analyze_entity(ctx.entity, Language::kPython, ctx.facts, ast, Config{});

  auto const identity = apply_fixes(ast, {}, ctx, provider, Config{});
  CHECK(canonicalize(identity.new_ast) == canonicalize(ast));
  CHECK(identity.applied.empty());

  auto const out = apply_fixes(ast, findings, ctx, provider, Config{});
  REQUIRE(out.new_ast.params() != nullptr);
  CHECK(out.new_ast.params()->items ==
        std::vector<DocParam>{{"a", "", "Human a."},
                              {"z", "", "Human z."},
                              {"b", "", "TODO: describe."}});
  CHECK(std::find(out.applied.begin(), out.applied.end(), RuleId::kAD102) == out.applied.end());
  CHECK(std::find(out.applied.begin(), out.applied.end(), RuleId::kAD101) != out.applied.end());
  CHECK(out.summary_source == SummarySource::kHumanExisting);
  for (auto rule : out.applied) {
    CHECK(std::any_of(findings.begin(), findings.end(),
                      [&](Finding const& x) { return x.rule == rule; }));
  }
}

TEST_CASE("apply_fixes removes placeholder-only stray params and reorders") {
  Fixture f{
      "def f(a, b):\n"
      "    \"\"\"Do f.\n\n    :param b: B words.\n    :param q: TODO: describe.\n"
      "    :param a: A words.\n    \"\"\"\n"};
  SummaryProvider provider{SummaryConfig{}};
  auto const ctx = f.ctx("f");
  auto const ast = *doc_ast_for(f.parsed.unit, ctx.entity);
  auto const findings = analyze_entity(ctx.entity, Language::kPython, ctx.facts, ast, Config{});
  auto const out = apply_fixes(ast, findings, ctx, provider, Config{});
  REQUIRE(out.new_ast.params() != nullptr);
  CHECK(out.new_ast.params()->items ==
        std::vector<DocParam>{{"a", "", "A words."}, {"b", "", "B words."}});
}

TEST_CASE("insert_summary") {
  Fixture f{"def parse_config_file(p):\n    \"\"\"\n    :param p: P.\n    \"\"\"\n"};
  SummaryProvider provider{SummaryConfig{}};
  auto const ctx = f.ctx("parse_config_file");
  auto const ast = *doc_ast_for(f.parsed.unit, ctx.entity);
  SummarySource source{SummarySource::kNone};
  auto const out = insert_summary(ast, ctx, provider, Config{}, &source);
  REQUIRE(out.summary() != nullptr);
  CHECK(out.summary()->text == "Parse config file.");
  CHECK(source == SummarySource::kLocalBaseline);
  CHECK(insert_summary(out, ctx, provider, Config{}) == out);
}

TEST_CASE("provider summaries are cut at a word boundary") {
  Fixture f{"def f():\n    \"\"\"\n    :returns: x\n    \"\"\"\n    return 1\n"};
  auto const ctx = f.ctx("f");
  auto const ast = *doc_ast_for(f.parsed.unit, ctx.entity);
  CannedProvider provider{""};
  std::mt19937 rng{99};
  for (int round = 0; round < 300; ++round) {
    std::string text;
    while (text.size() < 300) {
      if (!text.empty()) text += ' ';
      for (auto n = 1 + rng() % 12; n > 0; --n) text += static_cast<char>('a' + rng() % 26);
    }
    provider.set(text);
    Config config;
    config.summary.max_chars = 20 + static_cast<int>(rng() % 140);
    auto const out = insert_summary(ast, ctx, provider, config);
    REQUIRE(out.summary() != nullptr);
    auto const& s = out.summary()->text;
    CAPTURE(text);
    CAPTURE(s);
    CHECK(s.size() <= static_cast<std::size_t>(config.summary.max_chars));
    CHECK_FALSE(s.empty());
    CHECK(text.starts_with(s));
    CHECK((s.size() == text.size() || text[s.size()] == ' '));
  }
}

TEST_CASE("corpus: human text preserved and one pass reaches a fixpoint") {
  for (auto style : {DocStyle::kRest, DocStyle::kGoogle, DocStyle::kNumpy}) {
    Config config;
    config.target_style = style;
    SummaryProvider provider{config.summary};
    for (auto const& path : corpus_files()) {
      CAPTURE(path.string());
      CAPTURE(to_string(style));
      auto const content = read_file(path);
      auto const lang = *language_for_path(path.string());
      auto const parsed = parse_source(path.generic_string(), content, lang);
      for (auto const& entity : effective_entities(parsed, config)) {
        auto const ast = doc_ast_for(parsed.unit, entity);
        if (!ast) continue;
        auto const facts = gather_facts(parsed.unit, entity);
        auto const findings = analyze_entity(entity, lang, facts, ast, config);
        auto const out = apply_fixes(*ast, findings, EntityContext{parsed.unit, entity, facts},
                                     provider, config);
        auto const after = descriptions(out.new_ast);
        for (auto const& d : descriptions(*ast)) {
          if (d == config.placeholder_text || d.empty()) continue;
          CHECK(std::find(after.begin(), after.end(), d) != after.end());
        }
      }
      auto const fixed = process_source(path.generic_string(), content, lang, config, provider,
                                        RunMode::kFix);
      auto const again = parse_source(path.generic_string(), fixed.updated, lang);
      for (auto const& f : analyze_unit(again, config)) {
        if (!f.fix) continue;
        CAPTURE(f.entity_id);
        CAPTURE(f.message);
        FAIL("fixable finding survived one pass");
      }
    }
  }
}
