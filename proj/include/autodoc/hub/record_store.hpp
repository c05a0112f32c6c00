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
#include <memory>
#include <mutex>
#include <optional>
#include <vector>

#include "autodoc/hub/types.hpp"

namespace autodoc::hub {

namespace detail {
class JsonlFile;
}

struct RecordFilter {
  std::optional<std::string> repo;
  std::optional<std::string> branch;
  std::optional<RunStatus> status;
  std::optional<std::int64_t> since;  // finished_at >= since
  std::optional<std::int64_t> until;  // finished_at < until

  [[nodiscard]] auto matches(RunRecord const& record) const -> bool;
};

/// Append-only store of RunRecords, one JSON object per line. Appends are
/// serialized; reads are served from memory.
class RecordStore {
 public:
  explicit RecordStore(std::filesystem::path file, bool sync = true);
  ~RecordStore();

  /// Throws HubError when the append fails; the record is then not stored.
  void store(RunRecord const& record);

  [[nodiscard]] auto query(RecordFilter const& filter = {}) const -> std::vector<RunRecord>;

  /// The done record for a (repo, branch, commit) identity, if any.
  [[nodiscard]] auto find_done(std::string const& dedupe_key) const -> std::optional<RunRecord>;

  [[nodiscard]] auto path() const -> std::filesystem::path const&;

 private:
  std::unique_ptr<detail::JsonlFile> file_;
  mutable std::mutex mu_;
  std::vector<RunRecord> records_;
};

}  // namespace autodoc::hub
