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
#include <string_view>

namespace autodoc {

enum class RuleId { kAD001, kAD002, kAD101, kAD102, kAD103, kAD201, kAD301, kAD401, kAD402 };
enum class Severity { kError, kWarn, kInfo };

inline constexpr std::array<RuleId, 9> kAllRules{
    RuleId::kAD001, RuleId::kAD002, RuleId::kAD101, RuleId::kAD102, RuleId::kAD103,
    RuleId::kAD201, RuleId::kAD301, RuleId::kAD401, RuleId::kAD402};

/// The rule id fixes the severity; configuration can only disable rules.
[[nodiscard]] constexpr auto severity_of(RuleId rule) -> Severity {
  switch (rule) {
    case RuleId::kAD001:
    case RuleId::kAD002:
    case RuleId::kAD101:
      return Severity::kError;
    case RuleId::kAD102:
    case RuleId::kAD201:
      return Severity::kWarn;
    default:
      return Severity::kInfo;
  }
}

[[nodiscard]] auto to_string(RuleId rule) -> std::string_view;
[[nodiscard]] auto to_string(Severity severity) -> std::string_view;
[[nodiscard]] auto rule_from_string(std::string_view text) -> std::optional<RuleId>;
[[nodiscard]] auto severity_from_string(std::string_view text)
    -> std::optional<Severity>;

}  // namespace autodoc
