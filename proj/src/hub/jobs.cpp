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


#include "autodoc/hub/jobs.hpp"

#include <algorithm>
#include <fstream>

#include "autodoc/engine.hpp"
#include "json.hpp"

namespace autodoc::hub {

namespace fs = std::filesystem;
using nlohmann::json;

auto to_string(CrashPoint point) -> std::string_view {
  switch (point) {
    case CrashPoint::kBeforeCommit:
      return "before_commit";
    case CrashPoint::kAfterCommit:
      return "after_commit";
    case CrashPoint::kBeforeRefUpdate:
      return "before_ref_update";
    case CrashPoint::kAfterRefUpdate:
      return "after_ref_update";
  }
  return "unknown";
}

auto commit_message(std::string_view source_commit) -> std::string {
  return "autodoc: update docstrings for " + std::string{source_commit.substr(0, 7)};
}

namespace {

class WorktreeGuard {
 public:
  WorktreeGuard(RepoCommands& repo, fs::path path) : repo_{repo}, path_{std::move(path)} {}
  ~WorktreeGuard() { repo_.remove_worktree(path_); }
  WorktreeGuard(WorktreeGuard const&) = delete;
  auto operator=(WorktreeGuard const&) -> WorktreeGuard& = delete;

 private:
  RepoCommands& repo_;
  fs::path path_;
};

auto in_excluded_dir(std::string const& rel, Config const& config) -> bool {
  auto const parts = fs::path{rel}.parent_path();
  return std::any_of(parts.begin(), parts.end(), [&](fs::path const& p) {
    return std::find(config.exclude.begin(), config.exclude.end(), p.string()) !=
           config.exclude.end();
  });
}

// Repository-relative paths the run covers.
auto scope_files(HookEvent const& event, std::string const& commit, fs::path const& mirror,
                 fs::path const& worktree, JobEnv& env) -> std::vector<std::string> {
  std::vector<std::string> candidates;
  if (env.config.hub.scope == RunScope::kAll) {
    for (auto const& f : discover_files({worktree.string()}, env.config).files) {
      candidates.push_back(f.lexically_relative(worktree).generic_string());
    }
  } else {
    std::optional<std::string> from;
    if (event.before && event.before->find_first_not_of('0') != std::string::npos) {
      from = env.repo.resolve(mirror, *event.before);
    }
    candidates = env.repo.diff_names(mirror, from, commit);
  }
  std::vector<std::string> out;
  for (auto const& rel : candidates) {
    auto const lang = language_for_path(rel);
    if (!lang || !env.config.handles(*lang) || in_excluded_dir(rel, env.config)) continue;
    auto const full = worktree / rel;
    if (!fs::is_regular_file(fs::symlink_status(full))) continue;
    out.push_back(rel);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

void write_plain(fs::path const& path, std::string const& content) {
  std::ofstream out{path, std::ios::binary | std::ios::trunc};
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw HubError("cannot write " + path.string());
}

}  // namespace

auto run_autodoc_job(HookEvent const& event, JobEnv& env) -> RunRecord {
  RunRecord record;
  record.id = new_id();
  record.repo_ref = event.repo_ref;
  record.branch = event.branch;
  record.source_commit = event.head_commit;
  record.started_at = env.clock();
  auto const crash = [&](CrashPoint p) {
    if (env.crash_hook) env.crash_hook(p);
  };
  auto const finish = [&](RunStatus status, std::string message = {}) {
    record.status = status;
    record.message = std::move(message);
    record.finished_at = env.clock();
    if (status != RunStatus::kDone) {
      record.result_branch.reset();
      record.result_commit.reset();
      record.result_tree.reset();
    }
  };

  auto const result_branch = derive_branch_name(event.branch);
  if (!result_branch) {
    finish(RunStatus::kSkipped, "loop guard: branch is an autodoc branch");
    env.records.store(record);
    return record;
  }

  try {
    auto const mirror = env.repo.mirror_fetch(event.repo_ref);
    auto const commit = env.repo.resolve(mirror, event.head_commit);
    if (!commit) throw RepoError("commit " + event.head_commit + " not found");
    record.source_commit = *commit;

    // Stale guard: a newer push owns the result branch now.
    auto const tip = env.repo.resolve(mirror, "refs/heads/" + event.branch);
    if (tip != commit) {
      finish(RunStatus::kSkipped, "stale: branch " + event.branch + " is now at " +
                                      tip.value_or(std::string{"<deleted>"}));
      env.records.store(record);
      return record;
    }

    auto const worktree = env.work_root / record.id;
    WorktreeGuard guard{env.repo, worktree};
    env.repo.checkout_detached(mirror, *commit, worktree);

    std::vector<std::string> changed;
    std::vector<std::string> errors;
    for (auto const& rel : scope_files(event, *commit, mirror, worktree, env)) {
      auto const full = worktree / rel;
      auto result = process_source(rel, read_file(full), *language_for_path(rel), env.config,
                                   env.provider, RunMode::kFix);
      if (result.error) {
        errors.push_back(rel + ": " + *result.error);
        continue;
      }
      record.findings_count += static_cast<int>(result.findings.size());
      record.edits_count += static_cast<int>(result.edits.size());
      if (result.changed()) {
        write_plain(full, result.updated);
        changed.push_back(rel);
      }
    }
    record.files_changed = static_cast<int>(changed.size());
    std::string note;
    if (!errors.empty()) note = std::to_string(errors.size()) + " file(s) skipped: " + errors.front();

    if (changed.empty()) {
      finish(RunStatus::kNoop, note);
      env.records.store(record);
      return record;
    }

    auto const tree = env.repo.write_tree(mirror, worktree, changed);
    CommitIdentity identity;
    identity.timestamp = env.config.hub.fixed_timestamps;
    crash(CrashPoint::kBeforeCommit);
    auto const result_commit =
        env.repo.commit_tree(mirror, tree, *commit, commit_message(*commit), identity);
    crash(CrashPoint::kAfterCommit);
    crash(CrashPoint::kBeforeRefUpdate);
    env.repo.update_branch(mirror, event.repo_ref, *result_branch, result_commit);
    crash(CrashPoint::kAfterRefUpdate);

    record.result_branch = *result_branch;
    record.result_commit = result_commit;
    record.result_tree = tree;
    finish(RunStatus::kDone, note);
  } catch (InjectedCrash const&) {
    throw;
  } catch (std::exception const& e) {
    finish(RunStatus::kFailed, e.what());
    env.records.store(record);
    return record;
  }

  if (auto existing = env.records.find_done(record.dedupe_key());
      existing && existing->result_tree == record.result_tree) {
    return *existing;
  }
  env.records.store(record);
  return record;
}

auto notification_to_json(Notification const& n) -> std::string {
  return json{{"repo", n.repo_ref},
              {"branch", n.branch},
              {"result_branch", n.result_branch},
              {"result_commit", n.result_commit}}
      .dump();
}

auto notification_from_json(std::string_view text) -> Notification {
  try {
    auto const j = json::parse(text);
    return Notification{j.at("repo").get<std::string>(), j.at("branch").get<std::string>(),
                        j.at("result_branch").get<std::string>(),
                        j.at("result_commit").get<std::string>()};
  } catch (json::exception const& e) {
    throw HubError(std::string{"malformed notification: "} + e.what());
  }
}

LogNotifier::LogNotifier(fs::path log_file) : file_{std::move(log_file)} {}

void LogNotifier::notify(Notification const& n) {
  auto line = "autodoc result for " + n.repo_ref + " " + n.branch + ": " + n.result_branch +
              " at " + n.result_commit;
  std::lock_guard lock{mu_};
  if (!file_.empty()) {
    std::ofstream out{file_, std::ios::app};
    out << line << '\n';
  }
  entries_.push_back(std::move(line));
}

auto LogNotifier::entries() const -> std::vector<std::string> {
  std::lock_guard lock{mu_};
  return entries_;
}

auto aggregate_stats(std::vector<RunRecord> const& records) -> StatusCounts {
  StatusCounts out;
  for (auto const& r : records) ++out[r.repo_ref][std::string{to_string(r.status)}];
  return out;
}

auto prune_idle(std::vector<fs::path> const& dirs, std::int64_t retention_s, std::int64_t now_ms)
    -> std::vector<fs::path> {
  using namespace std::chrono;
  std::vector<fs::path> removed;
  auto const now = file_clock::now() -
                   (system_clock::now() - system_clock::time_point{milliseconds{now_ms}});
  auto const cutoff = now - seconds{retention_s};
  for (auto const& dir : dirs) {
    std::error_code ec;
    if (!fs::is_directory(dir, ec)) continue;
    for (auto const& entry : fs::directory_iterator{dir, ec}) {
      std::error_code tec;
      auto const t = fs::last_write_time(entry.path(), tec);
      if (tec || t >= cutoff) continue;
      fs::remove_all(entry.path(), tec);
      if (!tec) removed.push_back(entry.path());
    }
  }
  std::sort(removed.begin(), removed.end());
  return removed;
}

auto run_maintenance(QueueTask const& task, MaintenanceEnv& env) -> std::string {
  try {
    switch (task.kind) {
      case TaskKind::kCleanup: {
        auto const removed = prune_idle({env.storage / "work", env.storage / "mirrors"},
                                        env.config.hub.retention, env.clock());
        return "cleanup removed " + std::to_string(removed.size()) + " idle entr" +
               (removed.size() == 1 ? "y" : "ies");
      }
      case TaskKind::kStats: {
        auto const counts = aggregate_stats(env.records.query());
        json j{{"at", env.clock()}, {"repos", counts}};
        std::ofstream out{env.storage / "stats.jsonl", std::ios::app};
        out << j.dump() << '\n';
        if (!out) return "stats failed: cannot write stats file";
        return "stats " + j["repos"].dump();
      }
      case TaskKind::kNotify: {
        env.notifier.notify(notification_from_json(task.payload));
        return "notified";
      }
      case TaskKind::kAutodocRun:
        return "not a maintenance task";
    }
  } catch (std::exception const& e) {
    return std::string{to_string(task.kind)} + " failed: " + e.what();
  }
  return "unknown task";
}

}  // namespace autodoc::hub
