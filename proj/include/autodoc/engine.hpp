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

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "autodoc/analyzer.hpp"
#include "autodoc/config.hpp"
#include "autodoc/patcher.hpp"
#include "autodoc/summary.hpp"
#include "autodoc/synthesizer.hpp"

namespace autodoc {

enum class RunMode { kCheck, kFix };

/// Outcome of running the pipeline over one file.
struct FileResult {
  std::string path;  // as displayed and reported
  std::optional<Language> language;
  std::vector<Finding> findings;  // findings of the input
  std::vector<SynthesisOutcome> outcomes;
  std::vector<Edit> edits;
  std::string original;
  std::string updated;  // equals original in check mode
  std::optional<std::string> error;

  [[nodiscard]] auto changed() const -> bool { return updated != original; }
};

/// parse, analyze and, in fix mode, synthesize and patch.
[[nodiscard]] auto process_source(std::string path, std::string content, Language language,
                                  Config const& config, SummaryProvider& provider,
                                  RunMode mode) -> FileResult;

struct Discovery {
  std::vector<std::filesystem::path> files;
  std::vector<FileResult> errors;  // paths that do not exist or cannot be listed
};

/// Expands `paths` into source files, recursing into directories and
/// skipping excluded directory names. The result is sorted and unique.
[[nodiscard]] auto discover_files(std::vector<std::string> const& paths, Config const& config)
    -> Discovery;

/// Runs the pipeline over `files` on a bounded pool. Results are ordered by
/// path regardless of completion order.
[[nodiscard]] auto process_files(std::vector<std::filesystem::path> const& files,
                                 Config const& config, SummaryProvider& provider, RunMode mode)
    -> std::vector<FileResult>;

/// Replaces `path` with `content` through a temporary file and a rename.
void write_file_atomic(std::filesystem::path const& path, std::string const& content);

[[nodiscard]] auto read_file(std::filesystem::path const& path) -> std::string;

}  // namespace autodoc
