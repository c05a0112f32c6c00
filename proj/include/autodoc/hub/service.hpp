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

#include <atomic>
#include <memory>
#include <mutex>
#include <set>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "autodoc/config.hpp"
#include "autodoc/hub/jobs.hpp"
#include "autodoc/hub/queue.hpp"
#include "autodoc/hub/record_store.hpp"
#include "autodoc/hub/repo.hpp"

namespace httplib {
class Server;
}

namespace autodoc::hub {

/// Collaborators the service would otherwise build itself.
struct ServiceDeps {
  std::shared_ptr<RepoCommands> repo;
  std::shared_ptr<SummaryProvider> provider;
  std::shared_ptr<Notifier> notifier;
  Clock clock;
  std::function<void(CrashPoint)> crash_hook;
  bool log{true};
  bool sync{true};  // fsync appends
};

enum class HookOutcome { kAccepted, kRejected, kSkipped };

struct HookReply {
  HookOutcome outcome{HookOutcome::kRejected};
  int status{400};
  std::string message;
};

/// Webhook listener, task queue workers and record keeping.
class HubService {
 public:
  /// Opens the storage directory. Throws HubError when it is unusable or
  /// no secret is configured.
  explicit HubService(Config config, ServiceDeps deps = {});
  ~HubService();
  HubService(HubService const&) = delete;
  auto operator=(HubService const&) -> HubService& = delete;

  /// Validates, authenticates and enqueues one push delivery.
  auto receive_hook(std::string_view body, std::string_view signature) -> HookReply;

  /// Dequeues and handles one task on the calling thread. Returns false
  /// when nothing was ready.
  auto process_one(bool high_only = false) -> bool;

  /// Binds the HTTP listener (port 0 picks a free port) and starts the
  /// workers. Throws HubError when the port cannot be bound.
  void start();

  /// Stops accepting hooks, lets in-flight tasks finish and joins workers.
  /// Ready tasks stay in the journal for the next start.
  void stop();

  [[nodiscard]] auto port() const -> int { return port_; }
  [[nodiscard]] auto queue() -> TaskQueue& { return *queue_; }
  [[nodiscard]] auto records() -> RecordStore& { return *records_; }
  [[nodiscard]] auto notifier() -> Notifier& { return *notifier_; }
  [[nodiscard]] auto storage() const -> std::filesystem::path const& { return storage_; }

  /// Queues cleanup and stats tasks.
  void schedule_maintenance();

 private:
  void handle(QueueTask const& task);
  void worker_loop(bool high_only);
  void maintenance_loop();
  void log(std::string const& line) const;

  Config config_;
  ServiceDeps deps_;
  std::filesystem::path storage_;
  std::unique_ptr<RecordStore> records_;
  std::unique_ptr<TaskQueue> queue_;
  std::shared_ptr<RepoCommands> repo_;
  std::shared_ptr<SummaryProvider> provider_;
  std::shared_ptr<Notifier> notifier_;
  std::unique_ptr<httplib::Server> server_;
  std::thread server_thread_;
  std::vector<std::thread> workers_;
  std::thread ticker_;
  std::atomic<bool> stopping_{false};
  std::mutex ticker_mu_;
  std::condition_variable ticker_cv_;
  std::mutex deliveries_mu_;
  std::set<std::string> deliveries_;
  int port_{0};
  bool started_{false};
};

}  // namespace autodoc::hub
