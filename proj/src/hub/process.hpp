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
#include <utility>
#include <vector>

namespace autodoc::hub::detail {

struct ProcessResult {
  int exit_code{-1};
  std::string out;
  std::string err;
};

/// Runs `argv` (looked up on PATH) with `env` added to the inherited
/// environment, optionally in `cwd`, and collects both output streams.
[[nodiscard]] auto run_process(std::vector<std::string> const& argv,
                               std::vector<std::pair<std::string, std::string>> const& env = {},
                               std::optional<std::filesystem::path> const& cwd = {})
    -> ProcessResult;

}  // namespace autodoc::hub::detail
