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

#include <string>
#include <vector>

#include "autodoc/analyzer.hpp"
#include "autodoc/config.hpp"
#include "autodoc/docstyle.hpp"
#include "autodoc/summary.hpp"

namespace autodoc {

struct SynthesisOutcome {
  std::string entity_id;
  DocAst new_ast;
  std::vector<RuleId> applied;
  SummarySource summary_source{SummarySource::kNone};
};

/// Everything the synthesizer needs to know about one entity.
struct EntityContext {
  SourceUnit const& unit;
  CodeEntity const& entity;  // as analyzed (see effective_entities)
  EntityFacts const& facts;
};

/// Name under which a parameter is documented: `*args` and `**kw` for
/// python variadics, the bare name otherwise.
[[nodiscard]] auto documented_name(Param const& param, Language language) -> std::string;

/// Builds a docstring for an entity that has none.
[[nodiscard]] auto synthesize_docstring(EntityContext const& ctx,
                                        SummaryProvider& provider,
                                        Config const& config) -> SynthesisOutcome;

/// Applies the fix intents of `findings` to `ast`. Human text is kept.
[[nodiscard]] auto apply_fixes(DocAst const& ast, std::vector<Finding> const& findings,
                               EntityContext const& ctx, SummaryProvider& provider,
                               Config const& config) -> SynthesisOutcome;

/// Prepends a provider summary when `ast` has none.
[[nodiscard]] auto insert_summary(DocAst ast, EntityContext const& ctx,
                                  SummaryProvider& provider, Config const& config,
                                  SummarySource* source = nullptr) -> DocAst;

}  // namespace autodoc
