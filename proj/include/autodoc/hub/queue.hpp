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

#include <chrono>
#include <condition_variable>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "autodoc/hub/types.hpp"

namespace autodoc::hub {

namespace detail {
class JsonlFile;
}

enum class Priority { kHigh, kLow };
enum class TaskKind { kAutodocRun, kCleanup, kStats, kNotify };

[[nodiscard]] auto to_string(Priority priority) -> std::string_view;
[[nodiscard]] auto to_string(TaskKind kind) -> std::string_view;
[[nodiscard]] auto task_kind_from_string(std::string_view text) -> std::optional<TaskKind>;

/// autodoc runs go to the high queue, maintenance to the low one.
[[nodiscard]] constexpr auto priority_of(TaskKind kind) -> Priority {
  return kind == TaskKind::kAutodocRun ? Priority::kHigh : Priority::kLow;
}

struct QueueTask {
  std::string id;
  Priority priority{Priority::kHigh};
  TaskKind kind{TaskKind::kAutodocRun};
  std::string payload;     // JSON text
  std::string dedupe_key;  // empty: never deduplicated
  std::int64_t enqueued_at{0};
  int attempts{0};         // deliveries so far

  auto operator==(QueueTask const&) const -> bool = default;
};

[[nodiscard]] auto make_task(TaskKind kind, std::string payload, std::string dedupe_key,
                             std::int64_t now) -> QueueTask;

[[nodiscard]] auto task_to_json(QueueTask const& task) -> std::string;
[[nodiscard]] auto task_from_json(std::string_view text) -> QueueTask;

struct QueueOptions {
  std::optional<std::filesystem::path> journal;      // none: memory only
  std::optional<std::filesystem::path> dead_letter;  // none: memory only
  int visibility_timeout_ms{60000};
  int max_attempts{3};
  Clock clock;
  bool sync{true};
};

/// Two-priority task queue with at-least-once delivery. A dequeued task is
/// invisible until acknowledged; when its visibility timeout lapses it
/// becomes ready again, or moves to the dead-letter list once it has been
/// delivered max_attempts times. High tasks always go before low ones and
/// each priority is FIFO by enqueue order.
class TaskQueue {
 public:
  explicit TaskQueue(QueueOptions options);
  ~TaskQueue();

  enum class EnqueueResult { kAccepted, kDuplicate };

  /// Duplicate when a task with the same non-empty dedupe key is pending
  /// (ready or in flight).
  auto enqueue(QueueTask task) -> EnqueueResult;

  /// The next ready task under strict priority, or nothing. `high_only`
  /// restricts the call to the high queue.
  [[nodiscard]] auto dequeue_next(bool high_only = false) -> std::optional<QueueTask>;

  /// Like dequeue_next but waits up to `max_wait` for a task.
  [[nodiscard]] auto wait_dequeue(bool high_only, std::chrono::milliseconds max_wait)
      -> std::optional<QueueTask>;

  /// Acknowledges one delivery. Returns false for a stale delivery, one
  /// that has since timed out.
  auto ack(QueueTask const& delivery) -> bool;

  /// Returns timed-out deliveries to ready or to the dead-letter list.
  void reap_expired();

  /// Called, outside the queue lock, for each task moved to dead letter.
  void set_dead_letter_handler(std::function<void(QueueTask const&)> handler);

  /// Wakes waiters; later waits return immediately.
  void close();

  [[nodiscard]] auto ready_count() const -> std::size_t;
  [[nodiscard]] auto in_flight_count() const -> std::size_t;
  [[nodiscard]] auto dead_letters() const -> std::vector<QueueTask>;
  [[nodiscard]] auto is_pending(std::string const& dedupe_key) const -> bool;

 private:
  struct Entry {
    std::uint64_t seq;
    QueueTask task;
  };
  struct InFlight {
    Entry entry;
    std::int64_t deadline;
  };

  void replay();
  auto take_locked(bool high_only) -> std::optional<QueueTask>;
  auto reap_locked() -> std::vector<QueueTask>;
  void kill_locked(Entry entry, std::vector<QueueTask>& dead);
  void journal(std::string const& line);
  void notify_dead(std::vector<QueueTask> const& dead);

  QueueOptions options_;
  std::unique_ptr<detail::JsonlFile> journal_;
  std::unique_ptr<detail::JsonlFile> dead_file_;
  mutable std::mutex mu_;
  std::condition_variable cv_;
  std::map<std::uint64_t, QueueTask> ready_high_;
  std::map<std::uint64_t, QueueTask> ready_low_;
  std::map<std::string, InFlight> in_flight_;  // by task id
  std::multiset<std::string> pending_keys_;
  std::vector<QueueTask> dead_;
  std::vector<QueueTask> unreported_dead_;
  std::uint64_t next_seq_{0};
  bool closed_{false};
  std::function<void(QueueTask const&)> on_dead_;
};

}  // namespace autodoc::hub
