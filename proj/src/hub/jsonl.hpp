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
#include <mutex>
#include <string>
#include <string_view>
#include <vector>

namespace autodoc::hub::detail {

/// Append-only line file. Each append is one write(2) of a complete line
/// on an O_APPEND descriptor, so a crash leaves at most a torn final line,
/// which open() cuts off.
class JsonlFile {
 public:
  JsonlFile(std::filesystem::path path, bool sync);
  ~JsonlFile();
  JsonlFile(JsonlFile const&) = delete;
  auto operator=(JsonlFile const&) -> JsonlFile& = delete;

  /// Complete lines present when the file was opened.
  [[nodiscard]] auto initial_lines() const -> std::vector<std::string> const& {
    return initial_;
  }

  void append(std::string_view line);

  /// Atomically replaces the contents with `lines`.
  void rewrite(std::vector<std::string> const& lines);

  [[nodiscard]] auto path() const -> std::filesystem::path const& { return path_; }

 private:
  void open_for_append();

  std::filesystem::path path_;
  bool sync_;
  int fd_{-1};
  std::mutex mu_;
  std::vector<std::string> initial_;
};

}  // namespace autodoc::hub::detail
