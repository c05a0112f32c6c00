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

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "autodoc/source_model.hpp"

namespace autodoc {

enum class DocStyle { kRest, kGoogle, kNumpy, kJavadoc, kUnknown };

[[nodiscard]] auto to_string(DocStyle style) -> std::string_view;
[[nodiscard]] auto style_from_string(std::string_view text)
    -> std::optional<DocStyle>;

struct DocParam {
  std::string name;
  std::string type_text;  // verbatim, empty when absent
  std::string desc;

  auto operator==(DocParam const&) const -> bool = default;
};

struct RaisesItem {
  std::string type_text;
  std::string desc;

  auto operator==(RaisesItem const&) const -> bool = default;
};

struct SummaryBlock {
  std::string text;
  auto operator==(SummaryBlock const&) const -> bool = default;
};

struct DescriptionBlock {
  std::string text;
  auto operator==(DescriptionBlock const&) const -> bool = default;
};

struct ParamSection {
  std::vector<DocParam> items;
  auto operator==(ParamSection const&) const -> bool = default;
};

struct ReturnsSection {
  std::string type_text;
  std::string desc;
  auto operator==(ReturnsSection const&) const -> bool = default;
};

struct RaisesSection {
  std::vector<RaisesItem> items;
  auto operator==(RaisesSection const&) const -> bool = default;
};

struct OpaqueBlock {
  std::string verbatim;
  auto operator==(OpaqueBlock const&) const -> bool = default;
};

using Block = std::variant<SummaryBlock, DescriptionBlock, ParamSection,
                           ReturnsSection, RaisesSection, OpaqueBlock>;

/// Style-independent documentation tree. Equality compares blocks only;
/// the detected style and degradation notes are parse metadata.
struct DocAst {
  std::vector<Block> blocks;
  DocStyle style_detected{DocStyle::kUnknown};
  // Headers of recognized sections that were malformed and kept as text.
  std::vector<std::string> degraded;

  auto operator==(DocAst const& other) const -> bool {
    return blocks == other.blocks;
  }

  [[nodiscard]] auto summary() const -> SummaryBlock const*;
  [[nodiscard]] auto params() const -> ParamSection const*;
  [[nodiscard]] auto returns() const -> ReturnsSection const*;
  [[nodiscard]] auto raises() const -> RaisesSection const*;
  [[nodiscard]] auto params() -> ParamSection*;
  [[nodiscard]] auto raises() -> RaisesSection*;
};

struct StyleScores {
  DocStyle style{DocStyle::kUnknown};
  // Indexed by rest, google, numpy, javadoc.
  std::array<int, 4> scores{};
};

[[nodiscard]] auto detect_style(std::string_view raw) -> StyleScores;

/// Total: malformed sections degrade to text blocks. Without a hint the
/// style is detected; an unknown style yields summary and description only.
[[nodiscard]] auto parse_docstring(std::string_view raw,
                                   std::optional<DocStyle> style_hint = {})
    -> DocAst;

class UnrenderableStyle : public Error {
 public:
  using Error::Error;
};

/// Renders `ast` without delimiters. Lines after the first carry `indent`
/// (for javadoc, `indent` plus the ` * ` gutter); blank lines carry nothing.
[[nodiscard]] auto render_docstring(DocAst const& ast, DocStyle style,
                                    std::string_view indent) -> std::string;

[[nodiscard]] auto canonicalize(DocAst const& ast) -> DocAst;

/// Removes common leading indentation, ignoring the first line, and trims
/// blank lines at both ends. Carriage returns are dropped.
[[nodiscard]] auto clean_doc_text(std::string_view raw) -> std::string;

}  // namespace autodoc
