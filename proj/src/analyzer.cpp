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


#include "autodoc/analyzer.hpp"

#include <algorithm>

#include "text_util.hpp"

namespace autodoc {

auto to_string(RuleId rule) -> std::string_view {
  switch (rule) {
    case RuleId::kAD001:
      return "AD001";
    case RuleId::kAD002:
      return "AD002";
    case RuleId::kAD101:
      return "AD101";
    case RuleId::kAD102:
      return "AD102";
    case RuleId::kAD103:
      return "AD103";
    case RuleId::kAD201:
      return "AD201";
    case RuleId::kAD301:
      return "AD301";
    case RuleId::kAD401:
      return "AD401";
    case RuleId::kAD402:
      return "AD402";
  }
  return "AD000";
}

auto to_string(Severity severity) -> std::string_view {
  switch (severity) {
    case Severity::kError:
      return "error";
    case Severity::kWarn:
      return "warn";
    case Severity::kInfo:
      return "info";
  }
  return "info";
}

auto rule_from_string(std::string_view text) -> std::optional<RuleId> {
  for (auto rule : kAllRules) {
    if (to_string(rule) == text) return rule;
  }
  return std::nullopt;
}

auto severity_from_string(std::string_view text) -> std::optional<Severity> {
  for (auto s : {Severity::kError, Severity::kWarn, Severity::kInfo}) {
    if (to_string(s) == text) return s;
  }
  return std::nullopt;
}

namespace {

constexpr std::array<std::pair<FixKind, std::string_view>, 8> kFixNames{{
    {FixKind::kCreateDocstring, "create_docstring"},
    {FixKind::kAddSummary, "add_summary"},
    {FixKind::kAddParam, "add_param"},
    {FixKind::kRemoveParam, "remove_param"},
    {FixKind::kReorderParams, "reorder_params"},
    {FixKind::kAddReturns, "add_returns"},
    {FixKind::kAddRaises, "add_raises"},
    {FixKind::kRestyle, "restyle"},
}};

auto is_constructor(CodeEntity const& entity) -> bool {
  if (entity.kind != EntityKind::kMethod) return false;
  if (entity.name == "__init__" || entity.name == "constructor") return true;
  // Java constructors share the class name.
  auto const dot = entity.qualified_name.rfind('.');
  if (dot == std::string::npos) return false;
  auto const owner = std::string_view{entity.qualified_name}.substr(0, dot);
  auto const owner_dot = owner.rfind('.');
  auto const owner_name =
      owner_dot == std::string_view::npos ? owner : owner.substr(owner_dot + 1);
  return owner_name == entity.name;
}

auto same_exception(std::string_view documented, std::string_view raised) -> bool {
  if (documented == raised) return true;
  auto last = [](std::string_view s) {
    auto const dot = s.rfind('.');
    return dot == std::string_view::npos ? s : s.substr(dot + 1);
  };
  return last(documented) == last(raised);
}

auto make(RuleId rule, CodeEntity const& entity, std::string subject,
          std::string message, std::optional<FixIntent> fix) -> Finding {
  Finding f;
  f.rule = rule;
  f.severity = severity_of(rule);
  f.entity_id = entity.id;
  f.entity_name = entity.display_name();
  f.subject = std::move(subject);
  f.message = std::move(message);
  f.fix = std::move(fix);
  return f;
}

}  // namespace

auto to_string(FixKind kind) -> std::string_view {
  for (auto const& [k, name] : kFixNames) {
    if (k == kind) return name;
  }
  return "unknown";
}

auto fix_kind_from_string(std::string_view text) -> std::optional<FixKind> {
  for (auto const& [k, name] : kFixNames) {
    if (name == text) return k;
  }
  return std::nullopt;
}

auto gather_facts(SourceUnit const& unit, CodeEntity const& entity) -> EntityFacts {
  EntityFacts facts;
  if (entity.kind != EntityKind::kFunction && entity.kind != EntityKind::kMethod) {
    return facts;
  }
  auto const body = unit.text(entity.body_span);
  facts.returns_value = scan_returns(body, unit.language());
  facts.raises = scan_raises(body, unit.language());
  return facts;
}

auto doc_ast_for(SourceUnit const& unit, CodeEntity const& entity)
    -> std::optional<DocAst> {
  auto const* doc = entity.doc_slot.existing();
  if (doc == nullptr) return std::nullopt;
  std::optional<DocStyle> hint;
  if (unit.language() == Language::kJsdocFamily) hint = DocStyle::kJavadoc;
  auto ast = parse_docstring(doc->raw_text, hint);
  if (hint && detect_style(doc->raw_text).style == DocStyle::kUnknown) {
    ast.style_detected = DocStyle::kUnknown;
  }
  return ast;
}

auto bare_param_name(std::string_view documented) -> std::string {
  auto name = text::trim(documented);
  if (name.starts_with('[') && name.ends_with(']')) {
    name = text::trim(name.substr(1, name.size() - 2));
  }
  if (auto const eq = name.find('='); eq != std::string_view::npos) {
    name = text::trim(name.substr(0, eq));
  }
  if (name.starts_with("...")) name.remove_prefix(3);
  while (name.starts_with('*')) name.remove_prefix(1);
  return std::string{name};
}

auto documentable_params(Signature const& sig) -> std::vector<Param> {
  std::vector<Param> out;
  for (std::size_t i = 0; i < sig.params.size(); ++i) {
    auto const& p = sig.params[i];
    if (i == 0 && sig.is_method && (p.name == "self" || p.name == "cls")) continue;
    out.push_back(p);
  }
  return out;
}

auto has_param_rules(CodeEntity const& entity, Config const& config) -> bool {
  switch (entity.kind) {
    case EntityKind::kModule:
      return false;
    case EntityKind::kClass:
      return config.document_init_under_class;
    case EntityKind::kFunction:
      return true;
    case EntityKind::kMethod:
      return !(config.document_init_under_class && is_constructor(entity));
  }
  return false;
}

auto analyze_entity(CodeEntity const& entity, Language language,
                    EntityFacts const& facts, std::optional<DocAst> const& ast,
                    Config const& config) -> std::vector<Finding> {
  std::vector<Finding> out;
  if (entity.is_private() && !config.check_private) return out;
  auto const kind_name = std::string{to_string(entity.kind)};

  if (!ast) {
    if (config.enabled(RuleId::kAD001)) {
      std::optional<FixIntent> fix;
      auto const* ins = entity.doc_slot.insertion();
      if (ins != nullptr && ins->whole_line) fix = FixIntent{FixKind::kCreateDocstring, ""};
      out.push_back(make(RuleId::kAD001, entity, "",
                         "missing docstring for " + kind_name + " '" +
                             entity.display_name() + "'",
                         fix));
    }
    return out;
  }

  if (ast->summary() == nullptr) {
    out.push_back(make(RuleId::kAD002, entity, "", "docstring has no summary line",
                       FixIntent{FixKind::kAddSummary, ""}));
  }

  bool const params_apply = has_param_rules(entity, config);
  bool const body_rules = entity.kind == EntityKind::kFunction ||
                          entity.kind == EntityKind::kMethod;
  if (params_apply) {
    auto const wanted = documentable_params(entity.signature);
    std::vector<std::string> documented;  // bare names, documentation order
    std::vector<DocParam const*> items;
    if (auto const* section = ast->params()) {
      for (auto const& item : section->items) {
        documented.push_back(bare_param_name(item.name));
        items.push_back(&item);
      }
    }
    auto in_signature = [&](std::string const& name) {
      return std::any_of(entity.signature.params.begin(), entity.signature.params.end(),
                         [&](Param const& p) { return p.name == name; });
    };

    for (auto const& p : wanted) {
      if (std::find(documented.begin(), documented.end(), p.name) == documented.end()) {
        out.push_back(make(RuleId::kAD101, entity, p.name,
                           "parameter '" + p.name + "' is not documented",
                           FixIntent{FixKind::kAddParam, p.name}));
      }
    }

    std::vector<std::string> order;
    for (std::size_t i = 0; i < documented.size(); ++i) {
      auto const& name = documented[i];
      if (in_signature(name)) {
        if (std::find(order.begin(), order.end(), name) == order.end()) {
          order.push_back(name);
        }
        continue;
      }
      // `opts.key` documents a property of parameter `opts`.
      if (auto const dot = name.find('.');
          dot != std::string::npos && in_signature(name.substr(0, dot))) {
        continue;
      }
      auto const& desc = items[i]->desc;
      std::optional<FixIntent> fix;
      if (text::trim(desc).empty() || text::trim(desc) == config.placeholder_text) {
        fix = FixIntent{FixKind::kRemoveParam, items[i]->name};
      }
      out.push_back(make(RuleId::kAD102, entity, items[i]->name,
                         "documented parameter '" + items[i]->name +
                             "' is not in the signature",
                         fix));
    }

    std::vector<std::string> expected;
    for (auto const& p : entity.signature.params) {
      if (std::find(order.begin(), order.end(), p.name) != order.end()) {
        expected.push_back(p.name);
      }
    }
    if (expected != order) {
      out.push_back(make(RuleId::kAD103, entity, "",
                         "documented parameters are not in signature order",
                         FixIntent{FixKind::kReorderParams, ""}));
    }
  }

  if (body_rules && facts.returns_value && ast->returns() == nullptr) {
    out.push_back(make(RuleId::kAD201, entity, "",
                       kind_name + " returns a value but documents no return",
                       FixIntent{FixKind::kAddReturns, ""}));
  }

  if (body_rules) {
    for (auto const& raised : facts.raises) {
      bool documented = false;
      if (auto const* section = ast->raises()) {
        for (auto const& item : section->items) {
          if (same_exception(item.type_text, raised)) documented = true;
        }
      }
      if (!documented) {
        out.push_back(make(RuleId::kAD301, entity, raised,
                           "raised exception '" + raised + "' is not documented",
                           FixIntent{FixKind::kAddRaises, raised}));
      }
    }
  }

  auto const target = config.style_for(language);
  if (ast->style_detected != DocStyle::kUnknown && ast->style_detected != target) {
    out.push_back(make(RuleId::kAD401, entity, std::string{to_string(target)},
                       "docstring style is " +
                           std::string{to_string(ast->style_detected)} +
                           ", expected " + std::string{to_string(target)},
                       FixIntent{FixKind::kRestyle, std::string{to_string(target)}}));
  }

  for (auto const& header : ast->degraded) {
    out.push_back(make(RuleId::kAD402, entity, header,
                       "section '" + header + "' could not be parsed and is kept as text",
                       std::nullopt));
  }

  std::erase_if(out, [&](Finding const& f) { return !config.enabled(f.rule); });
  std::stable_sort(out.begin(), out.end(), [](Finding const& a, Finding const& b) {
    return a.rule < b.rule;
  });
  return out;
}

auto effective_entities(ParsedSource const& parsed, Config const& config)
    -> std::vector<CodeEntity> {
  auto entities = parsed.entities;
  if (!config.document_init_under_class) return entities;
  for (auto& cls : entities) {
    if (cls.kind != EntityKind::kClass) continue;
    for (auto const& member : parsed.entities) {
      auto const dot = member.qualified_name.rfind('.');
      if (dot == std::string::npos || member.qualified_name.substr(0, dot) != cls.qualified_name) {
        continue;
      }
      if (is_constructor(member)) {
        cls.signature = member.signature;
        break;
      }
    }
  }
  return entities;
}

auto analyze_unit(ParsedSource const& parsed, Config const& config)
    -> std::vector<Finding> {
  std::vector<Finding> out;
  for (auto const& entity : effective_entities(parsed, config)) {
    auto findings = analyze_entity(entity, parsed.unit.language(),
                                   gather_facts(parsed.unit, entity),
                                   doc_ast_for(parsed.unit, entity), config);
    auto const line = parsed.unit.line_of(entity.header_span.begin);
    for (auto& f : findings) {
      f.line = line;
      out.push_back(std::move(f));
    }
  }
  return out;
}

}  // namespace autodoc
