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


#include "autodoc/hub/service.hpp"

#include <iostream>

#include "httplib.h"
#include "json.hpp"

namespace autodoc::hub {

namespace fs = std::filesystem;
using nlohmann::json;

HubService::HubService(Config config, ServiceDeps deps)
    : config_{std::move(config)}, deps_{std::move(deps)}, storage_{config_.hub.storage_path} {
  if (config_.hub.secret.empty()) throw HubError("hub.secret must be set");
  if (!deps_.clock) deps_.clock = system_clock();
  std::error_code ec;
  fs::create_directories(storage_ / "work", ec);
  if (!ec) fs::create_directories(storage_ / "mirrors", ec);
  if (ec) throw HubError("cannot use storage path " + storage_.string() + ": " + ec.message());

  records_ = std::make_unique<RecordStore>(storage_ / "records.jsonl", deps_.sync);
  QueueOptions qo;
  qo.journal = storage_ / "queue.jsonl";
  qo.dead_letter = storage_ / "dead_letter.jsonl";
  qo.visibility_timeout_ms = config_.hub.visibility_timeout_ms;
  qo.max_attempts = config_.hub.max_attempts;
  qo.clock = deps_.clock;
  qo.sync = deps_.sync;
  queue_ = std::make_unique<TaskQueue>(std::move(qo));

  repo_ = deps_.repo ? deps_.repo : std::make_shared<GitCli>(storage_ / "mirrors");
  provider_ = deps_.provider ? deps_.provider : std::make_shared<SummaryProvider>(config_.summary);
  notifier_ = deps_.notifier ? deps_.notifier
                             : std::make_shared<LogNotifier>(storage_ / "notify.log");

  queue_->set_dead_letter_handler([this](QueueTask const& task) {
    log("dead letter: " + std::string{to_string(task.kind)} + " task " + task.id + " after " +
        std::to_string(task.attempts) + " attempt(s)");
    if (task.kind != TaskKind::kAutodocRun) return;
    RunRecord r;
    r.id = new_id();
    r.status = RunStatus::kFailed;
    r.started_at = r.finished_at = deps_.clock();
    r.message = "dead letter after " + std::to_string(task.attempts) + " attempt(s)";
    try {
      auto const event = parse_hook_event(task.payload);
      r.repo_ref = event.repo_ref;
      r.branch = event.branch;
      r.source_commit = event.head_commit;
    } catch (HubError const&) {
      r.message += "; unreadable payload";
    }
    try {
      records_->store(r);
    } catch (HubError const& e) {
      log(std::string{"cannot record dead letter: "} + e.what());
    }
  });
}

HubService::~HubService() { stop(); }

void HubService::log(std::string const& line) const {
  if (!deps_.log) return;
  static std::mutex mu;
  std::lock_guard lock{mu};
  std::clog << "autodoc-hub: " << line << '\n';
}

auto HubService::receive_hook(std::string_view body, std::string_view signature) -> HookReply {
  if (signature.empty() || !verify_signature(config_.hub.secret, body, signature)) {
    return {HookOutcome::kRejected, 401, "bad signature"};
  }
  HookEvent event;
  try {
    event = parse_hook_event(body);
  } catch (MalformedPayload const& e) {
    return {HookOutcome::kRejected, 400, e.what()};
  }
  {
    std::lock_guard lock{deliveries_mu_};
    if (!deliveries_.insert(event.delivery_id).second) {
      return {HookOutcome::kSkipped, 200, "duplicate delivery"};
    }
  }
  if (!derive_branch_name(event.branch)) {
    RunRecord r;
    r.id = new_id();
    r.repo_ref = event.repo_ref;
    r.branch = event.branch;
    r.source_commit = event.head_commit;
    r.status = RunStatus::kSkipped;
    r.started_at = r.finished_at = deps_.clock();
    r.message = "loop guard: branch is an autodoc branch";
    try {
      records_->store(r);
    } catch (HubError const& e) {
      return {HookOutcome::kRejected, 503, e.what()};
    }
    return {HookOutcome::kSkipped, 200, "autodoc branch"};
  }
  auto task = make_task(TaskKind::kAutodocRun, hook_event_to_json(event),
                        make_dedupe_key(event.repo_ref, event.branch, event.head_commit),
                        deps_.clock());
  try {
    if (queue_->enqueue(std::move(task)) == TaskQueue::EnqueueResult::kDuplicate) {
      return {HookOutcome::kSkipped, 200, "already queued"};
    }
  } catch (HubError const& e) {
    std::lock_guard lock{deliveries_mu_};
    deliveries_.erase(event.delivery_id);
    return {HookOutcome::kRejected, 503, e.what()};
  }
  log("queued " + event.repo_ref + " " + event.branch + " " + event.head_commit);
  return {HookOutcome::kAccepted, 202, "queued"};
}

void HubService::handle(QueueTask const& task) {
  if (task.kind == TaskKind::kAutodocRun) {
    HookEvent event;
    try {
      event = parse_hook_event(task.payload);
    } catch (MalformedPayload const& e) {
      log(std::string{"dropping unreadable task: "} + e.what());
      queue_->ack(task);
      return;
    }
    JobEnv env{config_, *records_, *repo_, *provider_, storage_ / "work", deps_.clock,
               deps_.crash_hook};
    RunRecord record;
    try {
      record = run_autodoc_job(event, env);
    } catch (InjectedCrash const& e) {
      log(std::string{"crash injected: "} + e.what());
      return;
    } catch (std::exception const& e) {
      // Storage trouble: leave the task unacknowledged so it is retried.
      log(std::string{"job error, will retry: "} + e.what());
      return;
    }
    log(std::string{to_string(record.status)} + " " + event.branch + " " + event.head_commit +
        (record.message.empty() ? "" : " (" + record.message + ")"));
    if (record.status == RunStatus::kDone) {
      Notification n{record.repo_ref, record.branch, *record.result_branch, *record.result_commit};
      queue_->enqueue(make_task(TaskKind::kNotify, notification_to_json(n), {}, deps_.clock()));
    }
    queue_->ack(task);
    return;
  }
  MaintenanceEnv env{config_, *records_, *notifier_, storage_, deps_.clock};
  log(run_maintenance(task, env));
  queue_->ack(task);
}

auto HubService::process_one(bool high_only) -> bool {
  auto task = queue_->dequeue_next(high_only);
  if (!task) return false;
  handle(*task);
  return true;
}

void HubService::worker_loop(bool high_only) {
  while (!stopping_) {
    auto task = queue_->wait_dequeue(high_only, std::chrono::milliseconds{200});
    if (task) handle(*task);
  }
}

void HubService::schedule_maintenance() {
  auto const now = deps_.clock();
  queue_->enqueue(make_task(TaskKind::kCleanup, "{}", "maintenance:cleanup", now));
  queue_->enqueue(make_task(TaskKind::kStats, "{}", "maintenance:stats", now));
}

void HubService::maintenance_loop() {
  auto const interval = std::chrono::seconds{config_.hub.maintenance_interval_s};
  std::unique_lock lock{ticker_mu_};
  while (!stopping_) {
    if (ticker_cv_.wait_for(lock, interval, [this] { return stopping_.load(); })) break;
    schedule_maintenance();
  }
}

void HubService::start() {
  if (started_) return;
  server_ = std::make_unique<httplib::Server>();
  // The library default adds SO_REUSEPORT, which would let a second hub
  // share the port instead of failing to start.
  server_->set_socket_options([](socket_t sock) {
    int yes = 1;
    ::setsockopt(sock, SOL_SOCKET, SO_REUSEADDR, &yes, sizeof yes);
  });
  server_->Post("/hooks/push", [this](httplib::Request const& req, httplib::Response& res) {
    auto const reply = receive_hook(req.body, req.get_header_value(std::string{kSignatureHeader}));
    json j{{"outcome", reply.outcome == HookOutcome::kAccepted   ? "accepted"
                       : reply.outcome == HookOutcome::kSkipped ? "skipped"
                                                                : "rejected"},
           {"message", reply.message}};
    res.status = reply.status;
    res.set_content(j.dump() + "\n", "application/json");
  });
  server_->Get("/records", [this](httplib::Request const& req, httplib::Response& res) {
    RecordFilter filter;
    if (req.has_param("repo")) filter.repo = req.get_param_value("repo");
    if (req.has_param("branch")) filter.branch = req.get_param_value("branch");
    if (req.has_param("status")) {
      filter.status = run_status_from_string(req.get_param_value("status"));
      if (!filter.status) {
        res.status = 400;
        res.set_content("unknown status\n", "text/plain");
        return;
      }
    }
    std::string body;
    for (auto const& r : records_->query(filter)) body += record_to_json(r) + "\n";
    res.set_content(body, "application/x-ndjson");
  });
  server_->Get("/healthz", [](httplib::Request const&, httplib::Response& res) {
    res.set_content("ok\n", "text/plain");
  });

  auto const& host = config_.hub.host;
  if (config_.hub.port == 0) {
    port_ = server_->bind_to_any_port(host);
  } else {
    port_ = server_->bind_to_port(host, config_.hub.port) ? config_.hub.port : -1;
  }
  if (port_ <= 0) {
    throw HubError("cannot listen on " + host + ":" + std::to_string(config_.hub.port));
  }
  stopping_ = false;
  server_thread_ = std::thread{[this] { server_->listen_after_bind(); }};
  for (int i = 0; i < config_.hub.workers_high; ++i) {
    workers_.emplace_back([this] { worker_loop(true); });
  }
  for (int i = 0; i < config_.hub.workers_low; ++i) {
    workers_.emplace_back([this] { worker_loop(false); });
  }
  if (config_.hub.maintenance_interval_s > 0) ticker_ = std::thread{[this] { maintenance_loop(); }};
  started_ = true;
  log("listening on " + host + ":" + std::to_string(port_));
}

void HubService::stop() {
  if (!started_) return;
  stopping_ = true;
  if (server_) server_->stop();
  if (server_thread_.joinable()) server_thread_.join();
  ticker_cv_.notify_all();
  if (ticker_.joinable()) ticker_.join();
  queue_->close();
  for (auto& w : workers_) {
    if (w.joinable()) w.join();
  }
  workers_.clear();
  started_ = false;
  log("stopped");
}

}  // namespace autodoc::hub
