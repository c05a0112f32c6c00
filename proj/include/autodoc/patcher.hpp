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
#include <string_view>
#include <vector>

#include "autodoc/config.hpp"
#include "autodoc/source_model.hpp"
#include "autodoc/synthesizer.hpp"

namespace autodoc {

/// A byte replacement confined to one doc slot. An insertion has an empty
/// target range.
struct Edit {
  ByteRange target;
  std::string replacement;
  std::string entity_id;

  auto operator==(Edit const&) const -> bool = default;
};

class OverlapError : public Error {
 public:
  using Error::Error;
};

/// Picks the python string delimiter for `body`: the preferred triple
/// quote, else the other one, else triple double quotes with the body's
/// conflicting quotes escaped. Returns the delimiter and the body.
[[nodiscard]] auto python_quote(std::string_view body, std::string_view preferred = "\"\"\"")
    -> std::pair<std::string, std::string>;

/// Full docstring literal (delimiters included) for a rendered body.
[[nodiscard]] auto encode_literal(std::string_view rendered, Language language,
                                  std::string_view indent, std::string_view prefix = {},
                                  std::string_view preferred_quote = "\"\"\"")
    -> std::string;

[[nodiscard]] auto plan_edits(ParsedSource const& parsed,
                              std::vector<SynthesisOutcome> const& outcomes,
                              Config const& config) -> std::vector<Edit>;

/// Splices `edits` into `content`. Overlapping edits throw OverlapError.
[[nodiscard]] auto apply_edits(std::string_view content, std::vector<Edit> edits)
    -> std::string;

/// Unified diff with three lines of context; empty when the inputs match.
[[nodiscard]] auto render_diff(std::string_view old_text, std::string_view new_text,
                               std::string_view path) -> std::string;

}  // namespace autodoc
