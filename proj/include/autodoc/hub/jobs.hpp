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
#include <functional>
#include <map>
#include <mutex>
#include <string>
#include <vector>

#include "autodoc/config.hpp"
#include "autodoc/hub/queue.hpp"
#include "autodoc/hub/record_store.hpp"
#include "autodoc/hub/repo.hpp"
#include "autodoc/hub/types.hpp"
#include "autodoc/summary.hpp"

namespace autodoc::hub {

/// Stages of run_autodoc_job where tests inject crashes.
enum class CrashPoint { kBeforeCommit, kAfterCommit, kBeforeRefUpdate, kAfterRefUpdate };

[[nodiscard]] auto to_string(CrashPoint point) -> std::string_view;

/// Thrown by a crash hook. It unwinds the job like a process death would:
/// nothing is recorded and the task stays unacknowledged.
class InjectedCrash : public HubError {
 public:
  using HubError::HubError;
};

struct JobEnv {
  Config const& config;
  RecordStore& records;
  RepoCommands& repo;
  SummaryProvider& provider;
  std::filesystem::path work_root;
  Clock clock;
  std::function<void(CrashPoint)> crash_hook;  // optional
};

[[nodiscard]] auto commit_message(std::string_view source_commit) -> std::string;

/// Runs the engine on the pushed commit and publishes the result on the
/// derived branch. The branch moves only after the commit object exists.
/// A repeated run for an already published (repo, branch, commit) with the
/// same result tree returns the existing done record without appending.
/// Store failures propagate so the task is retried.
auto run_autodoc_job(HookEvent const& event, JobEnv& env) -> RunRecord;

struct Notification {
  std::string repo_ref;
  std::string branch;
  std::string result_branch;
  std::string result_commit;
};

[[nodiscard]] auto notification_to_json(Notification const& n) -> std::string;
[[nodiscard]] auto notification_from_json(std::string_view text) -> Notification;

/// Hook point for telling people about results.
class Notifier {
 public:
  virtual ~Notifier() = default;
  virtual void notify(Notification const& notification) = 0;
};

/// The default notifier: one log line per notification, kept in memory
/// and appended to a file when one is given.
class LogNotifier : public Notifier {
 public:
  explicit LogNotifier(std::filesystem::path log_file = {});
  void notify(Notification const& notification) override;
  [[nodiscard]] auto entries() const -> std::vector<std::string>;

 private:
  std::filesystem::path file_;
  mutable std::mutex mu_;
  std::vector<std::string> entries_;
};

using StatusCounts = std::map<std::string, std::map<std::string, int>>;  // repo -> status -> n

/// RunRecord counts per repository and status.
[[nodiscard]] auto aggregate_stats(std::vector<RunRecord> const& records) -> StatusCounts;

/// Removes entries of `dirs` whose last modification is older than
/// `retention_s` seconds before `now_ms`. Returns the removed paths.
auto prune_idle(std::vector<std::filesystem::path> const& dirs, std::int64_t retention_s,
                std::int64_t now_ms) -> std::vector<std::filesystem::path>;

struct MaintenanceEnv {
  Config const& config;
  RecordStore& records;
  Notifier& notifier;
  std::filesystem::path storage;
  Clock clock;
};

/// Runs a cleanup, stats or notify task and returns a one-line summary.
/// Failures are reported in the summary rather than thrown.
auto run_maintenance(QueueTask const& task, MaintenanceEnv& env) -> std::string;

}  // namespace autodoc::hub
