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


#include "autodoc/hub/record_store.hpp"

#include "hub/jsonl.hpp"

namespace autodoc::hub {

auto RecordFilter::matches(RunRecord const& r) const -> bool {
  if (repo && r.repo_ref != *repo) return false;
  if (branch && r.branch != *branch) return false;
  if (status && r.status != *status) return false;
  if (since && r.finished_at < *since) return false;
  if (until && r.finished_at >= *until) return false;
  return true;
}

RecordStore::RecordStore(std::filesystem::path file, bool sync)
    : file_{std::make_unique<detail::JsonlFile>(std::move(file), sync)} {
  for (auto const& line : file_->initial_lines()) records_.push_back(record_from_json(line));
}

RecordStore::~RecordStore() = default;

void RecordStore::store(RunRecord const& record) {
  auto line = record_to_json(record);
  std::lock_guard lock{mu_};
  file_->append(line);
  records_.push_back(record);
}

auto RecordStore::query(RecordFilter const& filter) const -> std::vector<RunRecord> {
  std::lock_guard lock{mu_};
  std::vector<RunRecord> out;
  for (auto const& r : records_) {
    if (filter.matches(r)) out.push_back(r);
  }
  return out;
}

auto RecordStore::find_done(std::string const& dedupe_key) const -> std::optional<RunRecord> {
  std::lock_guard lock{mu_};
  for (auto const& r : records_) {
    if (r.status == RunStatus::kDone && r.dedupe_key() == dedupe_key) return r;
  }
  return std::nullopt;
}

auto RecordStore::path() const -> std::filesystem::path const& { return file_->path(); }

}  // namespace autodoc::hub
