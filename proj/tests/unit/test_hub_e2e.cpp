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


#include <chrono>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "autodoc/hub/jobs.hpp"
#include "autodoc/hub/service.hpp"
#include "doctest.h"
#include "httplib.h"
#include "support/hub_fixture.hpp"

using namespace autodoc;
using namespace autodoc::hub;
using testing::GitRepo;
using testing::TempDir;

namespace {

auto split_lines(std::string const& text) -> std::vector<std::string> {
  std::vector<std::string> out;
  std::istringstream in{text};
  for (std::string line; std::getline(in, line);) {
    if (!line.empty()) out.push_back(line);
  }
  return out;
}

auto records_with(HubService& service, RunStatus status) -> std::vector<RunRecord> {
  return service.records().query(RecordFilter{.status = status});
}

auto quiet(testing::ManualClock const& clock) -> ServiceDeps {
  ServiceDeps deps;
  deps.clock = clock.clock();
  deps.log = false;
  deps.sync = false;
  return deps;
}

// Drains the queue on the calling thread.
void drain(HubService& service) {
  while (service.process_one()) {
  }
}

struct CrashFree {
  std::string head;
  std::string result_commit;
  std::string result_tree;
};

// The result a crash-free run produces for the seeded repository.
auto crash_free_result() -> CrashFree {
  TempDir dir;
  GitRepo repo{dir / "origin"};
  testing::seed_sources(repo);
  auto const head = repo.commit("initial");
  testing::ManualClock clock;
  HubService service{testing::hub_config(dir / "storage"), quiet(clock)};
  testing::deliver(service, testing::push_body(repo, "master", head, "base"));
  drain(service);
  auto const done = records_with(service, RunStatus::kDone);
  REQUIRE(done.size() == 1);
  return {head, *done[0].result_commit, *done[0].result_tree};
}

}  // namespace

TEST_CASE("push to master publishes master-autodoc on top of the head") {
  TempDir dir;
  GitRepo repo{dir / "origin"};
  testing::seed_sources(repo);
  auto const head = repo.commit("initial");
  testing::ManualClock clock;
  HubService service{testing::hub_config(dir / "storage"), quiet(clock)};

  auto const reply = testing::deliver(service, testing::push_body(repo, "master", head, "d1"));
  CHECK(reply.outcome == HookOutcome::kAccepted);
  CHECK(reply.status == 202);
  CHECK(service.queue().ready_count() == 1);

  auto const started = std::chrono::steady_clock::now();
  CHECK(service.process_one());
  CHECK(std::chrono::steady_clock::now() - started < std::chrono::seconds{5});

  auto const done = records_with(service, RunStatus::kDone);
  REQUIRE(done.size() == 1);
  auto const& r = done[0];
  CHECK(r.branch == "master");
  CHECK(r.source_commit == head);
  CHECK(r.result_branch == "master-autodoc");
  CHECK(r.files_changed == 2);
  CHECK(r.edits_count > 0);

  auto const result = repo.rev("master-autodoc");
  CHECK(result == *r.result_commit);
  CHECK(repo.git({"rev-list", "--parents", "-n", "1", result}) == result + " " + head);
  CHECK(repo.git({"rev-parse", result + "^{tree}"}) == *r.result_tree);
  CHECK(repo.git({"log", "-1", "--format=%an <%ae>", result}) ==
        "autodoc-bot <autodoc-bot@localhost>");
  CHECK(repo.git({"log", "-1", "--format=%s", result}) ==
        "autodoc: update docstrings for " + head.substr(0, 7));
  CHECK(repo.git({"log", "-1", "--format=%at %ct", result}) == "1700000100 1700000100");
  CHECK(repo.rev("master") == head);

  auto const changed = split_lines(repo.git({"diff", "--name-only", head, result}));
  CHECK(changed == std::vector<std::string>{"pkg/users.py", "web/fetch.ts"});
  for (auto const& path : changed) {
    CAPTURE(path);
    CHECK(testing::only_doc_slots_changed(path, repo.show(head, path), repo.show(result, path)));
  }
  CHECK(repo.show(result, "pkg/users.py").find("\"\"\"Get user name.") != std::string::npos);
  CHECK(repo.show(result, "web/fetch.ts").find("Fetch http response.") != std::string::npos);

  // The done record queued a notification.
  CHECK(service.queue().ready_count() == 1);
  drain(service);
  auto const& notifier = dynamic_cast<LogNotifier&>(service.notifier());
  REQUIRE(notifier.entries().size() == 1);
  CHECK(notifier.entries()[0].find("master-autodoc") != std::string::npos);
  CHECK(notifier.entries()[0].find(repo.path().string()) != std::string::npos);
}

TEST_CASE("pushes that need no edits create no branch") {
  TempDir dir;
  GitRepo repo{dir / "origin"};
  testing::seed_sources(repo);
  auto const base = repo.commit("initial");
  repo.git({"checkout", "-q", "-b", "docs"});
  repo.write("pkg/documented.py",
             testing::slurp(repo.path() / "pkg/documented.py") + "\n\ndef sub(a):\n"
                                                                 "    \"\"\"Negate.\n\n"
                                                                 "    :param a: Value.\n"
                                                                 "    :returns: Negation.\n"
                                                                 "    \"\"\"\n    return -a\n");
  auto const head = repo.commit("documented change");
  testing::ManualClock clock;
  HubService service{testing::hub_config(dir / "storage"), quiet(clock)};
  testing::deliver(service, testing::push_body(repo, "docs", head, "d1", base));
  drain(service);
  auto const noop = records_with(service, RunStatus::kNoop);
  REQUIRE(noop.size() == 1);
  CHECK_FALSE(noop[0].result_branch.has_value());
  CHECK_FALSE(noop[0].result_commit.has_value());
  CHECK(repo.rev("docs-autodoc").empty());
  CHECK(records_with(service, RunStatus::kDone).empty());
}

TEST_CASE("scope all covers files outside the push") {
  TempDir dir;
  GitRepo repo{dir / "origin"};
  testing::seed_sources(repo);
  auto const base = repo.commit("initial");
  repo.write("README.md", "# sample\n\nmore\n");
  auto const head = repo.commit("readme");
  testing::ManualClock clock;

  SUBCASE("changed") {
    HubService service{testing::hub_config(dir / "storage"), quiet(clock)};
    testing::deliver(service, testing::push_body(repo, "master", head, "d1", base));
    drain(service);
    CHECK(records_with(service, RunStatus::kNoop).size() == 1);
  }
  SUBCASE("all") {
    auto config = testing::hub_config(dir / "storage");
    config.hub.scope = RunScope::kAll;
    HubService service{config, quiet(clock)};
    testing::deliver(service, testing::push_body(repo, "master", head, "d1", base));
    drain(service);
    auto const done = records_with(service, RunStatus::kDone);
    REQUIRE(done.size() == 1);
    CHECK(done[0].files_changed == 2);
  }
}

TEST_CASE("hook intake: signatures, payloads, duplicates and the loop guard") {
  TempDir dir;
  GitRepo repo{dir / "origin"};
  testing::seed_sources(repo);
  auto const head = repo.commit("initial");
  testing::ManualClock clock;
  HubService service{testing::hub_config(dir / "storage"), quiet(clock)};
  auto const body = testing::push_body(repo, "master", head, "d1");

  CHECK(service.receive_hook(body, sign_body("wrong", body)).status == 401);
  CHECK(service.receive_hook(body, "").status == 401);
  std::string const garbage = "{\"schema_version\":1}";
  CHECK(testing::deliver(service, garbage).status == 400);
  CHECK(service.queue().ready_count() == 0);

  CHECK(testing::deliver(service, body).outcome == HookOutcome::kAccepted);
  auto const replay = testing::deliver(service, body);
  CHECK(replay.outcome == HookOutcome::kSkipped);
  CHECK(service.queue().ready_count() == 1);
  auto const same_commit = testing::deliver(service, testing::push_body(repo, "master", head, "d2"));
  CHECK(same_commit.outcome == HookOutcome::kSkipped);
  CHECK(service.queue().ready_count() == 1);

  auto const guard =
      testing::deliver(service, testing::push_body(repo, "master-autodoc", head, "d3"));
  CHECK(guard.outcome == HookOutcome::kSkipped);
  CHECK(service.queue().ready_count() == 1);
  auto const skipped = records_with(service, RunStatus::kSkipped);
  REQUIRE(skipped.size() == 1);
  CHECK(skipped[0].branch == "master-autodoc");

  drain(service);
  for (auto const& r : service.records().query()) {
    if (r.branch.ends_with("-autodoc")) CHECK(r.status != RunStatus::kDone);
  }
}

TEST_CASE("redelivery of a completed push converges on the same tree") {
  TempDir dir;
  GitRepo repo{dir / "origin"};
  testing::seed_sources(repo);
  auto const head = repo.commit("initial");
  testing::ManualClock clock;
  HubService service{testing::hub_config(dir / "storage"), quiet(clock)};
  testing::deliver(service, testing::push_body(repo, "master", head, "d1"));
  drain(service);
  auto const first = records_with(service, RunStatus::kDone);
  REQUIRE(first.size() == 1);
  testing::deliver(service, testing::push_body(repo, "master", head, "d2"));
  drain(service);
  auto const done = records_with(service, RunStatus::kDone);
  CHECK(done.size() == 1);
  CHECK(repo.rev("master-autodoc") == *first[0].result_commit);
  CHECK(repo.git({"rev-parse", "master-autodoc^{tree}"}) == *first[0].result_tree);
}

TEST_CASE("a later push makes an older task stale and moves the result branch") {
  TempDir dir;
  GitRepo repo{dir / "origin"};
  testing::seed_sources(repo);
  auto const first = repo.commit("initial");
  testing::ManualClock clock;
  HubService service{testing::hub_config(dir / "storage"), quiet(clock)};
  testing::deliver(service, testing::push_body(repo, "master", first, "d1"));
  repo.write("pkg/more.py", "def compute_total(items):\n    return sum(items)\n");
  auto const second = repo.commit("more");
  testing::deliver(service, testing::push_body(repo, "master", second, "d2", first));
  drain(service);
  auto const skipped = records_with(service, RunStatus::kSkipped);
  REQUIRE(skipped.size() == 1);
  CHECK(skipped[0].source_commit == first);
  auto const done = records_with(service, RunStatus::kDone);
  REQUIRE(done.size() == 1);
  CHECK(done[0].source_commit == second);
  CHECK(done[0].files_changed == 1);
  CHECK(repo.git({"rev-list", "--parents", "-n", "1", "master-autodoc"}) ==
        *done[0].result_commit + " " + second);
}

TEST_CASE("unreachable repositories yield a failed record") {
  TempDir dir;
  testing::ManualClock clock;
  HubService service{testing::hub_config(dir / "storage"), quiet(clock)};
  HookEvent e{(dir / "missing").string(), "master", std::string(40, 'a'), "d1", {}};
  testing::deliver(service, hook_event_to_json(e));
  drain(service);
  auto const failed = records_with(service, RunStatus::kFailed);
  REQUIRE(failed.size() == 1);
  CHECK_FALSE(failed[0].message.empty());
  CHECK(service.queue().ready_count() + service.queue().in_flight_count() == 0);
}

TEST_CASE("crash points converge to the crash-free result") {
  auto const expected = crash_free_result();
  for (auto point : {CrashPoint::kBeforeCommit, CrashPoint::kAfterCommit,
                     CrashPoint::kBeforeRefUpdate, CrashPoint::kAfterRefUpdate}) {
    for (bool restart : {false, true}) {
      CAPTURE(to_string(point));
      CAPTURE(restart);
      TempDir dir;
      GitRepo repo{dir / "origin"};
      testing::seed_sources(repo);
      auto const head = repo.commit("initial");
      REQUIRE(head == expected.head);
      testing::ManualClock clock;
      auto const config = testing::hub_config(dir / "storage");
      auto armed = std::make_shared<bool>(true);
      auto deps = quiet(clock);
      deps.crash_hook = [armed, point](CrashPoint at) {
        if (at == point && *armed) {
          *armed = false;
          throw InjectedCrash("injected at " + std::string{to_string(at)});
        }
      };
      auto service = std::make_unique<HubService>(config, deps);
      testing::deliver(*service, testing::push_body(repo, "master", head, "d1"));
      CHECK(service->process_one());
      CHECK_FALSE(*armed);
      CHECK(records_with(*service, RunStatus::kDone).empty());
      bool const branch_moved = point == CrashPoint::kAfterRefUpdate;
      CHECK(repo.rev("master-autodoc").empty() == !branch_moved);

      if (restart) {
        service.reset();
        service = std::make_unique<HubService>(config, deps);
      } else {
        CHECK_FALSE(service->process_one());
        clock.advance(config.hub.visibility_timeout_ms + 1);
      }
      drain(*service);

      auto const done = records_with(*service, RunStatus::kDone);
      REQUIRE(done.size() == 1);
      CHECK(*done[0].result_tree == expected.result_tree);
      CHECK(*done[0].result_commit == expected.result_commit);
      CHECK(repo.rev("master-autodoc") == expected.result_commit);
      CHECK(repo.git({"rev-parse", "master-autodoc^{tree}"}) == expected.result_tree);

      // A late duplicate delivery still leaves exactly one done record.
      testing::deliver(*service, testing::push_body(repo, "master", head, "late"));
      drain(*service);
      auto const key = make_dedupe_key(repo.path().string(), "master", head);
      int effective = 0;
      for (auto const& r : records_with(*service, RunStatus::kDone)) {
        if (r.dedupe_key() == key) ++effective;
      }
      CHECK(effective == 1);
    }
  }
}

TEST_CASE("a task that keeps crashing is dead-lettered with a failed record") {
  TempDir dir;
  GitRepo repo{dir / "origin"};
  testing::seed_sources(repo);
  auto const head = repo.commit("initial");
  testing::ManualClock clock;
  auto config = testing::hub_config(dir / "storage");
  config.hub.max_attempts = 2;
  auto deps = quiet(clock);
  deps.crash_hook = [](CrashPoint at) {
    if (at == CrashPoint::kBeforeCommit) throw InjectedCrash("always");
  };
  HubService service{config, deps};
  testing::deliver(service, testing::push_body(repo, "master", head, "d1"));
  for (int attempt = 0; attempt < 2; ++attempt) {
    CHECK(service.process_one());
    clock.advance(config.hub.visibility_timeout_ms + 1);
  }
  service.queue().reap_expired();
  CHECK(service.queue().dead_letters().size() == 1);
  CHECK(service.queue().dead_letters()[0].attempts == 2);
  auto const failed = records_with(service, RunStatus::kFailed);
  REQUIRE(failed.size() == 1);
  CHECK(failed[0].source_commit == head);
  CHECK(failed[0].message.find("dead letter") != std::string::npos);
  CHECK(testing::slurp(dir / "storage" / "dead_letter.jsonl").find(head) != std::string::npos);
  CHECK(repo.rev("master-autodoc").empty());
}

TEST_CASE("HTTP listener and workers") {
  TempDir dir;
  GitRepo repo{dir / "origin"};
  testing::seed_sources(repo);
  auto const head = repo.commit("initial");
  auto config = testing::hub_config(dir / "storage");
  config.hub.workers_high = 2;
  config.hub.workers_low = 1;
  ServiceDeps deps;
  deps.log = false;
  HubService service{config, deps};
  service.start();
  REQUIRE(service.port() > 0);
  httplib::Client client{"127.0.0.1", service.port()};

  CHECK(client.Get("/healthz")->status == 200);
  auto const body = testing::push_body(repo, "master", head, "http-1");
  CHECK(client.Post("/hooks/push", {{"X-Autodoc-Signature", sign_body(testing::kSecret, body)}},
                    body, "application/json")
            ->status == 202);
  CHECK(client.Post("/hooks/push", {{"X-Autodoc-Signature", "sha256=00"}}, body,
                    "application/json")
            ->status == 401);
  std::string const junk = "{]";
  CHECK(client.Post("/hooks/push", {{"X-Autodoc-Signature", sign_body(testing::kSecret, junk)}},
                    junk, "application/json")
            ->status == 400);

  auto const deadline = std::chrono::steady_clock::now() + std::chrono::seconds{10};
  std::vector<std::string> lines;
  while (std::chrono::steady_clock::now() < deadline) {
    auto const res = client.Get("/records?status=done&repo=" +
                                httplib::detail::encode_query_param(repo.path().string()));
    REQUIRE(res);
    lines = split_lines(res->body);
    if (!lines.empty()) break;
    std::this_thread::sleep_for(std::chrono::milliseconds{50});
  }
  REQUIRE(lines.size() == 1);
  auto const record = record_from_json(lines[0]);
  CHECK(record.status == RunStatus::kDone);
  CHECK(repo.rev("master-autodoc") == *record.result_commit);
  CHECK(split_lines(client.Get("/records?status=failed")->body).empty());

  auto busy = testing::hub_config(dir / "storage-2");
  busy.hub.port = service.port();
  HubService second{busy, deps};
  CHECK_THROWS_AS(second.start(), HubError);
  service.stop();
}

TEST_CASE("service start-up failures") {
  TempDir dir;
  auto config = testing::hub_config(dir / "storage");
  config.hub.secret.clear();
  CHECK_THROWS_AS(HubService(config, ServiceDeps{}), HubError);
  testing::TempDir other;
  other.write("file", "x");
  auto blocked = testing::hub_config(other / "file" / "storage");
  CHECK_THROWS_AS(HubService(blocked, ServiceDeps{}), HubError);
}
