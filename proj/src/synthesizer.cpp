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


#include "autodoc/synthesizer.hpp"

#include <algorithm>

#include "text_util.hpp"

namespace autodoc {

namespace {

auto type_for(Param const& param, Language language) -> std::string {
  if (language != Language::kPython || !param.annotation_text) return {};
  return *param.annotation_text;
}

auto returns_type(Signature const& sig, Language language) -> std::string {
  if (language != Language::kPython || !sig.returns_annotation) return {};
  return *sig.returns_annotation;
}

auto signature_index(Signature const& sig, std::string const& bare) -> std::size_t {
  for (std::size_t i = 0; i < sig.params.size(); ++i) {
    if (sig.params[i].name == bare) return i;
  }
  return sig.params.size();
}

// Position of a documented item in the signature. `opts.key` sorts with
// `opts`; unknown names sort last.
auto item_index(Signature const& sig, std::string const& documented) -> std::size_t {
  auto const bare = bare_param_name(documented);
  auto index = signature_index(sig, bare);
  if (auto const dot = bare.find('.'); index == sig.params.size() && dot != std::string::npos) {
    index = signature_index(sig, bare.substr(0, dot));
  }
  return index;
}

auto placeholder_or_empty(std::string_view desc, Config const& config) -> bool {
  auto const t = text::trim(desc);
  return t.empty() || t == config.placeholder_text;
}

auto ensure_params(DocAst& ast) -> ParamSection& {
  if (auto* p = ast.params()) return *p;
  ast.blocks.emplace_back(ParamSection{});
  return std::get<ParamSection>(ast.blocks.back());
}

auto ensure_raises(DocAst& ast) -> RaisesSection& {
  if (auto* r = ast.raises()) return *r;
  ast.blocks.emplace_back(RaisesSection{});
  return std::get<RaisesSection>(ast.blocks.back());
}

}  // namespace

auto documented_name(Param const& param, Language language) -> std::string {
  if (language == Language::kPython) {
    if (param.kind == ParamKind::kVarPositional) return "*" + param.name;
    if (param.kind == ParamKind::kVarKeyword) return "**" + param.name;
  }
  return param.name;
}

auto insert_summary(DocAst ast, EntityContext const& ctx, SummaryProvider& provider,
                    Config const& config, SummarySource* source) -> DocAst {
  if (ast.summary() != nullptr) {
    if (source) *source = SummarySource::kHumanExisting;
    return ast;
  }
  auto const request = make_request(ctx.unit, ctx.entity, provider.config());
  auto result = provider.provide(request);
  auto text = truncate_summary(result.response.summary, config.summary.max_chars);
  if (text.empty()) {
    result = Summarized{summarize_local(request.name), SummarySource::kLocalBaseline, {}};
    text = truncate_summary(result.response.summary, config.summary.max_chars);
  }
  ast.blocks.insert(ast.blocks.begin(), SummaryBlock{std::move(text)});
  if (source) *source = result.source;
  return ast;
}

auto synthesize_docstring(EntityContext const& ctx, SummaryProvider& provider,
                          Config const& config) -> SynthesisOutcome {
  SynthesisOutcome out;
  out.entity_id = ctx.entity.id;
  auto const lang = ctx.unit.language();
  DocAst ast;
  if (has_param_rules(ctx.entity, config)) {
    ParamSection params;
    for (auto const& p : documentable_params(ctx.entity.signature)) {
      params.items.push_back(
          DocParam{documented_name(p, lang), type_for(p, lang), config.placeholder_text});
    }
    if (!params.items.empty()) ast.blocks.emplace_back(std::move(params));
  }
  if (ctx.facts.returns_value) {
    ast.blocks.emplace_back(ReturnsSection{returns_type(ctx.entity.signature, lang),
                                           config.placeholder_text});
  }
  if (!ctx.facts.raises.empty()) {
    RaisesSection raises;
    for (auto const& r : ctx.facts.raises) {
      raises.items.push_back(RaisesItem{r, config.placeholder_text});
    }
    ast.blocks.emplace_back(std::move(raises));
  }
  out.new_ast = insert_summary(std::move(ast), ctx, provider, config, &out.summary_source);
  out.applied.push_back(RuleId::kAD001);
  return out;
}

auto apply_fixes(DocAst const& ast, std::vector<Finding> const& findings,
                 EntityContext const& ctx, SummaryProvider& provider,
                 Config const& config) -> SynthesisOutcome {
  SynthesisOutcome out;
  out.entity_id = ctx.entity.id;
  out.new_ast = ast;
  out.summary_source =
      ast.summary() != nullptr ? SummarySource::kHumanExisting : SummarySource::kNone;
  auto& doc = out.new_ast;
  auto const lang = ctx.unit.language();
  auto const& sig = ctx.entity.signature;
  auto applied = [&](RuleId rule) {
    if (std::find(out.applied.begin(), out.applied.end(), rule) == out.applied.end()) {
      out.applied.push_back(rule);
    }
  };
  bool reorder = false;

  for (auto const& finding : findings) {
    if (!finding.fix || !config.enabled(finding.rule)) continue;
    auto const& fix = *finding.fix;
    switch (fix.kind) {
      case FixKind::kCreateDocstring:
        break;  // handled by synthesize_docstring
      case FixKind::kAddSummary:
        doc = insert_summary(std::move(doc), ctx, provider, config, &out.summary_source);
        applied(finding.rule);
        break;
      case FixKind::kAddParam: {
        auto const index = signature_index(sig, fix.subject);
        if (index == sig.params.size()) break;
        auto& items = ensure_params(doc).items;
        // Insert before the first documented parameter that comes later in
        // the signature, so the new item lands at its signature position.
        auto pos = std::find_if(items.begin(), items.end(), [&](DocParam const& item) {
          auto const other = item_index(sig, item.name);
          return other < sig.params.size() && other > index;
        });
        auto const& param = sig.params[index];
        items.insert(pos, DocParam{documented_name(param, lang), type_for(param, lang),
                                   config.placeholder_text});
        applied(finding.rule);
        break;
      }
      case FixKind::kRemoveParam: {
        auto* section = doc.params();
        if (section == nullptr) break;
        auto& items = section->items;
        auto const before = items.size();
        std::erase_if(items, [&](DocParam const& item) {
          return item.name == fix.subject && placeholder_or_empty(item.desc, config);
        });
        if (items.size() != before) applied(finding.rule);
        if (items.empty()) {
          std::erase_if(doc.blocks, [](Block const& b) {
            auto const* p = std::get_if<ParamSection>(&b);
            return p != nullptr && p->items.empty();
          });
        }
        break;
      }
      case FixKind::kReorderParams:
        reorder = true;
        applied(finding.rule);
        break;
      case FixKind::kAddReturns: {
        if (doc.returns() != nullptr) break;
        doc.blocks.emplace_back(
            ReturnsSection{returns_type(sig, lang), config.placeholder_text});
        applied(finding.rule);
        break;
      }
      case FixKind::kAddRaises:
        ensure_raises(doc).items.push_back(RaisesItem{fix.subject, config.placeholder_text});
        applied(finding.rule);
        break;
      case FixKind::kRestyle:
        // The planner renders in the target style.
        applied(finding.rule);
        break;
    }
  }

  if (reorder) {
    if (auto* section = doc.params()) {
      std::stable_sort(section->items.begin(), section->items.end(),
                       [&](DocParam const& a, DocParam const& b) {
                         return item_index(sig, a.name) < item_index(sig, b.name);
                       });
    }
  }
  return out;
}

}  // namespace autodoc
