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
#include <string_view>
#include <vector>

#include "autodoc/analyzer.hpp"

namespace autodoc {

/// One report line: a finding in a file, or a per-file error.
struct ReportItem {
  std::string path;
  std::optional<Finding> finding;
  std::optional<std::string> error;

  auto operator==(ReportItem const&) const -> bool = default;
};

struct Report {
  std::vector<ReportItem> items;

  auto operator==(Report const&) const -> bool = default;

  [[nodiscard]] auto finding_count() const -> std::size_t;
  [[nodiscard]] auto error_count() const -> std::size_t;
};

enum class ReportFormat { kText, kJson };

/// Human-readable lines followed by a totals line.
[[nodiscard]] auto emit_text(Report const& report, std::size_t files_scanned) -> std::string;

/// One JSON object per item, newline-delimited.
[[nodiscard]] auto emit_json(Report const& report) -> std::string;

/// Inverse of emit_json. Throws Error on malformed input.
[[nodiscard]] auto parse_json_report(std::string_view text) -> Report;

}  // namespace autodoc
