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


#include "autodoc/hub/queue.hpp"

#include "hub/jsonl.hpp"
#include "json.hpp"

namespace autodoc::hub {

using nlohmann::json;

auto to_string(Priority priority) -> std::string_view {
  return priority == Priority::kHigh ? "high" : "low";
}

auto to_string(TaskKind kind) -> std::string_view {
  switch (kind) {
    case TaskKind::kAutodocRun:
      return "autodoc_run";
    case TaskKind::kCleanup:
      return "cleanup";
    case TaskKind::kStats:
      return "stats";
    case TaskKind::kNotify:
      return "notify";
  }
  return "unknown";
}

auto task_kind_from_string(std::string_view text) -> std::optional<TaskKind> {
  for (auto k : {TaskKind::kAutodocRun, TaskKind::kCleanup, TaskKind::kStats, TaskKind::kNotify}) {
    if (to_string(k) == text) return k;
  }
  return std::nullopt;
}

auto make_task(TaskKind kind, std::string payload, std::string dedupe_key, std::int64_t now)
    -> QueueTask {
  return QueueTask{new_id(), priority_of(kind), kind, std::move(payload), std::move(dedupe_key),
                   now, 0};
}

namespace {

auto task_json(QueueTask const& t) -> json {
  return json{{"id", t.id},
              {"priority", to_string(t.priority)},
              {"kind", to_string(t.kind)},
              {"payload", t.payload},
              {"dedupe_key", t.dedupe_key},
              {"enqueued_at", t.enqueued_at},
              {"attempts", t.attempts}};
}

auto task_of(json const& j) -> QueueTask {
  QueueTask t;
  t.id = j.at("id").get<std::string>();
  auto const kind = task_kind_from_string(j.at("kind").get<std::string>());
  if (!kind) throw HubError("unknown task kind");
  t.kind = *kind;
  t.priority = j.at("priority").get<std::string>() == "high" ? Priority::kHigh : Priority::kLow;
  t.payload = j.at("payload").get<std::string>();
  t.dedupe_key = j.at("dedupe_key").get<std::string>();
  t.enqueued_at = j.at("enqueued_at").get<std::int64_t>();
  t.attempts = j.at("attempts").get<int>();
  return t;
}

}  // namespace

auto task_to_json(QueueTask const& task) -> std::string { return task_json(task).dump(); }

auto task_from_json(std::string_view text) -> QueueTask {
  try {
    return task_of(json::parse(text));
  } catch (json::exception const& e) {
    throw HubError(std::string{"malformed task: "} + e.what());
  }
}

TaskQueue::TaskQueue(QueueOptions options) : options_{std::move(options)} {
  if (!options_.clock) options_.clock = system_clock();
  if (options_.dead_letter) {
    dead_file_ = std::make_unique<detail::JsonlFile>(*options_.dead_letter, options_.sync);
    for (auto const& line : dead_file_->initial_lines()) dead_.push_back(task_from_json(line));
  }
  if (options_.journal) {
    journal_ = std::make_unique<detail::JsonlFile>(*options_.journal, options_.sync);
    replay();
  }
}

TaskQueue::~TaskQueue() = default;

// Rebuilds state from the journal. Deliveries that were in flight when the
// process stopped were never acknowledged, so they become ready again. The
// journal is then compacted to the surviving tasks.
void TaskQueue::replay() {
  std::map<std::string, Entry> live;
  std::uint64_t seq = 0;
  try {
    for (auto const& line : journal_->initial_lines()) {
      auto const j = json::parse(line);
      auto const op = j.at("op").get<std::string>();
      if (op == "enqueue") {
        auto task = task_of(j.at("task"));
        auto id = task.id;
        live.emplace(std::move(id), Entry{seq++, std::move(task)});
      } else if (auto const it = live.find(j.at("id").get<std::string>()); it != live.end()) {
        if (op == "deliver") {
          it->second.task.attempts = j.at("attempts").get<int>();
        } else if (op == "ack" || op == "dead") {
          live.erase(it);
        }
      }
    }
  } catch (json::exception const& e) {
    throw HubError(std::string{"corrupt queue journal: "} + e.what());
  }
  std::vector<Entry> ordered;
  for (auto& [id, entry] : live) ordered.push_back(std::move(entry));
  std::sort(ordered.begin(), ordered.end(),
            [](Entry const& a, Entry const& b) { return a.seq < b.seq; });
  std::vector<std::string> compacted;
  std::vector<QueueTask> dead;
  for (auto& e : ordered) {
    e.seq = next_seq_++;
    if (e.task.attempts >= options_.max_attempts) {
      kill_locked(std::move(e), dead);
      continue;
    }
    compacted.push_back(json{{"op", "enqueue"}, {"task", task_json(e.task)}}.dump());
    if (!e.task.dedupe_key.empty()) pending_keys_.insert(e.task.dedupe_key);
    auto& ready = e.task.priority == Priority::kHigh ? ready_high_ : ready_low_;
    ready.emplace(e.seq, std::move(e.task));
  }
  journal_->rewrite(compacted);
  // No handler is installed yet; these are reported when one is.
  unreported_dead_ = std::move(dead);
}

void TaskQueue::journal(std::string const& line) {
  if (journal_) journal_->append(line);
}

auto TaskQueue::enqueue(QueueTask task) -> EnqueueResult {
  {
    std::lock_guard lock{mu_};
    if (!task.dedupe_key.empty() && pending_keys_.contains(task.dedupe_key)) {
      return EnqueueResult::kDuplicate;
    }
    task.priority = priority_of(task.kind);
    journal(json{{"op", "enqueue"}, {"task", task_json(task)}}.dump());
    if (!task.dedupe_key.empty()) pending_keys_.insert(task.dedupe_key);
    auto& ready = task.priority == Priority::kHigh ? ready_high_ : ready_low_;
    ready.emplace(next_seq_++, std::move(task));
  }
  cv_.notify_all();
  return EnqueueResult::kAccepted;
}

void TaskQueue::kill_locked(Entry entry, std::vector<QueueTask>& dead) {
  journal(json{{"op", "dead"}, {"id", entry.task.id}}.dump());
  if (dead_file_) dead_file_->append(task_json(entry.task).dump());
  if (!entry.task.dedupe_key.empty()) {
    if (auto const it = pending_keys_.find(entry.task.dedupe_key); it != pending_keys_.end()) {
      pending_keys_.erase(it);
    }
  }
  dead_.push_back(entry.task);
  dead.push_back(std::move(entry.task));
}

auto TaskQueue::reap_locked() -> std::vector<QueueTask> {
  std::vector<QueueTask> dead;
  auto const now = options_.clock();
  for (auto it = in_flight_.begin(); it != in_flight_.end();) {
    if (it->second.deadline > now) {
      ++it;
      continue;
    }
    auto entry = std::move(it->second.entry);
    it = in_flight_.erase(it);
    if (entry.task.attempts >= options_.max_attempts) {
      kill_locked(std::move(entry), dead);
    } else {
      auto& ready = entry.task.priority == Priority::kHigh ? ready_high_ : ready_low_;
      ready.emplace(entry.seq, std::move(entry.task));
    }
  }
  return dead;
}

auto TaskQueue::take_locked(bool high_only) -> std::optional<QueueTask> {
  auto* ready = !ready_high_.empty() ? &ready_high_ : (high_only ? nullptr : &ready_low_);
  if (ready == nullptr || ready->empty()) return std::nullopt;
  auto node = ready->extract(ready->begin());
  auto seq = node.key();
  auto& task = node.mapped();
  ++task.attempts;
  journal(json{{"op", "deliver"}, {"id", task.id}, {"attempts", task.attempts}}.dump());
  auto const deadline = options_.clock() + options_.visibility_timeout_ms;
  auto copy = task;
  in_flight_.insert_or_assign(copy.id, InFlight{Entry{seq, std::move(task)}, deadline});
  return copy;
}

void TaskQueue::notify_dead(std::vector<QueueTask> const& dead) {
  if (dead.empty()) return;
  std::function<void(QueueTask const&)> handler;
  {
    std::lock_guard lock{mu_};
    handler = on_dead_;
  }
  if (handler) {
    for (auto const& t : dead) handler(t);
  }
}

auto TaskQueue::dequeue_next(bool high_only) -> std::optional<QueueTask> {
  std::vector<QueueTask> dead;
  std::optional<QueueTask> out;
  {
    std::lock_guard lock{mu_};
    dead = reap_locked();
    out = take_locked(high_only);
  }
  notify_dead(dead);
  return out;
}

auto TaskQueue::wait_dequeue(bool high_only, std::chrono::milliseconds max_wait)
    -> std::optional<QueueTask> {
  auto const until = std::chrono::steady_clock::now() + max_wait;
  for (;;) {
    std::vector<QueueTask> dead;
    std::optional<QueueTask> out;
    bool expired = false;
    {
      std::unique_lock lock{mu_};
      dead = reap_locked();
      out = take_locked(high_only);
      if (!out && !closed_) {
        // Wake periodically so visibility timeouts are noticed.
        auto const slice = std::min(until, std::chrono::steady_clock::now() +
                                               std::chrono::milliseconds{50});
        cv_.wait_until(lock, slice);
        expired = std::chrono::steady_clock::now() >= until;
      }
      if (closed_) expired = true;
    }
    notify_dead(dead);
    if (out || expired) return out;
  }
}

auto TaskQueue::ack(QueueTask const& delivery) -> bool {
  std::lock_guard lock{mu_};
  auto const it = in_flight_.find(delivery.id);
  if (it == in_flight_.end() || it->second.entry.task.attempts != delivery.attempts) return false;
  journal(json{{"op", "ack"}, {"id", delivery.id}}.dump());
  auto const& key = it->second.entry.task.dedupe_key;
  if (!key.empty()) {
    if (auto const k = pending_keys_.find(key); k != pending_keys_.end()) pending_keys_.erase(k);
  }
  in_flight_.erase(it);
  return true;
}

void TaskQueue::reap_expired() {
  std::vector<QueueTask> dead;
  {
    std::lock_guard lock{mu_};
    dead = reap_locked();
  }
  notify_dead(dead);
}

void TaskQueue::set_dead_letter_handler(std::function<void(QueueTask const&)> handler) {
  std::vector<QueueTask> backlog;
  {
    std::lock_guard lock{mu_};
    on_dead_ = std::move(handler);
    backlog.swap(unreported_dead_);
  }
  notify_dead(backlog);
}

void TaskQueue::close() {
  {
    std::lock_guard lock{mu_};
    closed_ = true;
  }
  cv_.notify_all();
}

auto TaskQueue::ready_count() const -> std::size_t {
  std::lock_guard lock{mu_};
  return ready_high_.size() + ready_low_.size();
}

auto TaskQueue::in_flight_count() const -> std::size_t {
  std::lock_guard lock{mu_};
  return in_flight_.size();
}

auto TaskQueue::dead_letters() const -> std::vector<QueueTask> {
  std::lock_guard lock{mu_};
  return dead_;
}

auto TaskQueue::is_pending(std::string const& dedupe_key) const -> bool {
  std::lock_guard lock{mu_};
  return pending_keys_.contains(dedupe_key);
}

}  // namespace autodoc::hub
