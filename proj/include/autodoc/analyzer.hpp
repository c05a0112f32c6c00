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

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "autodoc/config.hpp"
#include "autodoc/docstyle.hpp"
#include "autodoc/rules.hpp"
#include "autodoc/source_model.hpp"

namespace autodoc {

enum class FixKind {
  kCreateDocstring,
  kAddSummary,
  kAddParam,
  kRemoveParam,
  kReorderParams,
  kAddReturns,
  kAddRaises,
  kRestyle,
};

[[nodiscard]] auto to_string(FixKind kind) -> std::string_view;
[[nodiscard]] auto fix_kind_from_string(std::string_view text)
    -> std::optional<FixKind>;

struct FixIntent {
  FixKind kind{FixKind::kCreateDocstring};
  // Parameter name, exception type or target style, depending on kind.
  std::string subject;

  auto operator==(FixIntent const&) const -> bool = default;
};

struct Finding {
  RuleId rule{RuleId::kAD001};
  Severity severity{Severity::kError};
  std::string entity_id;
  std::string entity_name;  // qualified name, or the module name
  std::size_t line{0};      // 1-based line of the entity header, 0 if unknown
  std::string subject;      // what the finding is about (param, exception)
  std::string message;
  std::optional<FixIntent> fix;

  auto operator==(Finding const&) const -> bool = default;
};

/// Body facts the rules consult, gathered once per entity.
struct EntityFacts {
  bool returns_value{false};
  std::vector<std::string> raises;
};

[[nodiscard]] auto gather_facts(SourceUnit const& unit, CodeEntity const& entity)
    -> EntityFacts;

/// Parses an entity's existing docstring, or returns nothing.
[[nodiscard]] auto doc_ast_for(SourceUnit const& unit, CodeEntity const& entity)
    -> std::optional<DocAst>;

/// Documented parameter name reduced to the bare identifier the signature
/// uses: `*args` -> args, `...rest` -> rest, `[opt=1]` -> opt.
[[nodiscard]] auto bare_param_name(std::string_view documented) -> std::string;

/// Parameters that must be documented: the signature minus a leading
/// self/cls on methods.
[[nodiscard]] auto documentable_params(Signature const& sig) -> std::vector<Param>;

/// Whether parameter rules apply to the entity under `config`.
[[nodiscard]] auto has_param_rules(CodeEntity const& entity, Config const& config)
    -> bool;

/// Findings for one entity, ordered by rule id and then by position.
[[nodiscard]] auto analyze_entity(CodeEntity const& entity, Language language,
                                  EntityFacts const& facts,
                                  std::optional<DocAst> const& ast,
                                  Config const& config) -> std::vector<Finding>;

/// Entities prepared for analysis: with document_init_under_class, classes
/// take their constructor's signature.
[[nodiscard]] auto effective_entities(ParsedSource const& parsed,
                                      Config const& config)
    -> std::vector<CodeEntity>;

[[nodiscard]] auto analyze_unit(ParsedSource const& parsed, Config const& config)
    -> std::vector<Finding>;

}  // namespace autodoc
