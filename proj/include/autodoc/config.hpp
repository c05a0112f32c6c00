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

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "autodoc/docstyle.hpp"
#include "autodoc/rules.hpp"
#include "autodoc/source_model.hpp"

namespace autodoc {

enum class ProviderKind { kLocal, kRemote };

struct SummaryConfig {
  ProviderKind provider{ProviderKind::kLocal};
  std::string endpoint;  // e.g. http://127.0.0.1:9000
  int timeout_ms{5000};
  int max_chars{120};
  int max_snippet_bytes{16384};
};

enum class RunScope { kChanged, kAll };

struct HubConfig {
  std::string host{"127.0.0.1"};
  int port{8080};
  std::string secret;
  std::string storage_path{".autodoc-hub"};
  int workers_high{2};
  int workers_low{1};
  int visibility_timeout_ms{60000};
  int max_attempts{3};
  std::int64_t retention{7 * 24 * 3600};  // seconds
  RunScope scope{RunScope::kChanged};
  // Epoch seconds used for commit author/committer dates when set.
  std::optional<std::int64_t> fixed_timestamps;
  int maintenance_interval_s{0};  // 0 disables periodic maintenance
};

struct Config {
  DocStyle target_style{DocStyle::kRest};
  std::vector<Language> languages{Language::kPython, Language::kJsdocFamily};
  std::set<RuleId> disabled;
  bool check_private{false};
  std::string placeholder_text{"TODO: describe."};
  bool document_init_under_class{false};
  std::vector<std::string> exclude{".git", ".hg", ".svn", "build", "dist"};
  int jobs{0};  // 0 picks the hardware concurrency
  SummaryConfig summary;
  HubConfig hub;

  [[nodiscard]] auto enabled(RuleId rule) const -> bool {
    return !disabled.contains(rule);
  }
  [[nodiscard]] auto handles(Language lang) const -> bool;
  /// Style docstrings of `lang` are rendered in.
  [[nodiscard]] auto style_for(Language lang) const -> DocStyle {
    return lang == Language::kJsdocFamily ? DocStyle::kJavadoc : target_style;
  }
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Parses the TOML subset: strings, integers, booleans, string arrays and
/// dotted section headers. Unknown keys and type mismatches throw ConfigError
/// naming the key.
[[nodiscard]] auto parse_config(std::string_view text) -> Config;

/// Loads `path`, or $AUTODOC_CONFIG when `path` is empty, or defaults.
[[nodiscard]] auto load_config(std::string const& path) -> Config;

}  // namespace autodoc
