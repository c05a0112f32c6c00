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


#include "autodoc/hub/types.hpp"

#include <openssl/crypto.h>
#include <openssl/evp.h>
#include <openssl/hmac.h>

#include <chrono>
#include <random>

#include "json.hpp"

namespace autodoc::hub {

using nlohmann::json;

auto system_clock() -> Clock {
  return [] {
    return std::chrono::duration_cast<std::chrono::milliseconds>(
               std::chrono::system_clock::now().time_since_epoch())
        .count();
  };
}

namespace {

auto required_string(json const& j, char const* key) -> std::string {
  auto const it = j.find(key);
  if (it == j.end()) throw MalformedPayload(std::string{"missing field '"} + key + "'");
  if (!it->is_string()) throw MalformedPayload(std::string{"field '"} + key + "' must be a string");
  auto value = it->get<std::string>();
  if (value.empty()) throw MalformedPayload(std::string{"field '"} + key + "' must be non-empty");
  return value;
}

auto is_hex(std::string_view s) -> bool {
  return std::all_of(s.begin(), s.end(), [](char c) {
    return (c >= '0' && c <= '9') || (c >= 'a' && c <= 'f') || (c >= 'A' && c <= 'F');
  });
}

// Rejects names git would refuse or that could be read as options.
auto plausible_branch(std::string_view b) -> bool {
  if (b.empty() || b.front() == '-' || b.front() == '/' || b.back() == '/' || b.ends_with(".lock")) {
    return false;
  }
  if (b.find("..") != std::string_view::npos || b.find("//") != std::string_view::npos ||
      b.find("@{") != std::string_view::npos) {
    return false;
  }
  return std::none_of(b.begin(), b.end(), [](char c) {
    auto const u = static_cast<unsigned char>(c);
    return u < 0x20 || u == 0x7F || c == ' ' || c == '~' || c == '^' || c == ':' || c == '?' ||
           c == '*' || c == '[' || c == '\\';
  });
}

auto optional_string(json const& j, char const* key) -> std::optional<std::string> {
  auto const it = j.find(key);
  if (it == j.end() || it->is_null()) return std::nullopt;
  return it->get<std::string>();
}

}  // namespace

auto parse_hook_event(std::string_view body) -> HookEvent {
  json j;
  try {
    j = json::parse(body);
  } catch (json::exception const& e) {
    throw MalformedPayload(std::string{"payload is not JSON: "} + e.what());
  }
  if (!j.is_object()) throw MalformedPayload("payload must be an object");
  auto const version = j.find("schema_version");
  if (version == j.end() || !version->is_number_integer()) {
    throw MalformedPayload("missing integer field 'schema_version'");
  }
  if (version->get<int>() != kHookSchemaVersion) {
    throw MalformedPayload("unsupported schema_version " + version->dump());
  }
  HookEvent event;
  event.repo_ref = required_string(j, "repo");
  event.branch = required_string(j, "branch");
  event.head_commit = required_string(j, "head_commit");
  event.delivery_id = required_string(j, "delivery_id");
  if (event.repo_ref.front() == '-') throw MalformedPayload("field 'repo' is not a repository");
  if (!plausible_branch(event.branch)) throw MalformedPayload("field 'branch' is not a branch name");
  if (event.head_commit.size() < 4 || event.head_commit.size() > 64 || !is_hex(event.head_commit)) {
    throw MalformedPayload("field 'head_commit' must be a hex revision id");
  }
  if (j.contains("before") && !j["before"].is_null()) {
    if (!j["before"].is_string() || !is_hex(j["before"].get<std::string>())) {
      throw MalformedPayload("field 'before' must be a hex revision id");
    }
    event.before = j["before"].get<std::string>();
  }
  return event;
}

auto hook_event_to_json(HookEvent const& event) -> std::string {
  json j{{"schema_version", kHookSchemaVersion},
         {"repo", event.repo_ref},
         {"branch", event.branch},
         {"head_commit", event.head_commit},
         {"delivery_id", event.delivery_id}};
  if (event.before) j["before"] = *event.before;
  return j.dump();
}

auto derive_branch_name(std::string_view branch) -> std::optional<std::string> {
  if (branch.ends_with(kAutodocSuffix)) return std::nullopt;
  return std::string{branch} + std::string{kAutodocSuffix};
}

auto sign_body(std::string_view secret, std::string_view body) -> std::string {
  unsigned char mac[EVP_MAX_MD_SIZE];
  unsigned int mac_len = 0;
  HMAC(EVP_sha256(), secret.data(), static_cast<int>(secret.size()),
       reinterpret_cast<unsigned char const*>(body.data()), body.size(), mac, &mac_len);
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  out.reserve(mac_len * 2);
  for (unsigned int i = 0; i < mac_len; ++i) {
    out += kHex[mac[i] >> 4];
    out += kHex[mac[i] & 0xF];
  }
  return out;
}

auto verify_signature(std::string_view secret, std::string_view body, std::string_view header)
    -> bool {
  if (header.starts_with("sha256=")) header.remove_prefix(7);
  auto const expected = sign_body(secret, body);
  if (header.size() != expected.size()) return false;
  std::string lowered{header};
  std::transform(lowered.begin(), lowered.end(), lowered.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return CRYPTO_memcmp(lowered.data(), expected.data(), expected.size()) == 0;
}

auto to_string(RunStatus status) -> std::string_view {
  switch (status) {
    case RunStatus::kDone:
      return "done";
    case RunStatus::kNoop:
      return "noop";
    case RunStatus::kSkipped:
      return "skipped";
    case RunStatus::kFailed:
      return "failed";
  }
  return "unknown";
}

auto run_status_from_string(std::string_view text) -> std::optional<RunStatus> {
  if (text == "done") return RunStatus::kDone;
  if (text == "noop") return RunStatus::kNoop;
  if (text == "skipped") return RunStatus::kSkipped;
  if (text == "failed") return RunStatus::kFailed;
  return std::nullopt;
}

auto make_dedupe_key(std::string_view repo, std::string_view branch, std::string_view commit)
    -> std::string {
  // NUL cannot occur in any of the parts.
  std::string key{repo};
  key += '\0';
  key += branch;
  key += '\0';
  key += commit;
  return key;
}

auto RunRecord::dedupe_key() const -> std::string {
  return make_dedupe_key(repo_ref, branch, source_commit);
}

auto record_to_json(RunRecord const& r) -> std::string {
  json j{{"id", r.id},
         {"repo", r.repo_ref},
         {"branch", r.branch},
         {"source_commit", r.source_commit},
         {"result_branch", r.result_branch ? json(*r.result_branch) : json(nullptr)},
         {"result_commit", r.result_commit ? json(*r.result_commit) : json(nullptr)},
         {"result_tree", r.result_tree ? json(*r.result_tree) : json(nullptr)},
         {"status", to_string(r.status)},
         {"files_changed", r.files_changed},
         {"findings_count", r.findings_count},
         {"edits_count", r.edits_count},
         {"started_at", r.started_at},
         {"finished_at", r.finished_at},
         {"message", r.message}};
  return j.dump();
}

auto record_from_json(std::string_view line) -> RunRecord {
  try {
    auto const j = json::parse(line);
    RunRecord r;
    r.id = j.at("id").get<std::string>();
    r.repo_ref = j.at("repo").get<std::string>();
    r.branch = j.at("branch").get<std::string>();
    r.source_commit = j.at("source_commit").get<std::string>();
    r.result_branch = optional_string(j, "result_branch");
    r.result_commit = optional_string(j, "result_commit");
    r.result_tree = optional_string(j, "result_tree");
    auto const status = run_status_from_string(j.at("status").get<std::string>());
    if (!status) throw HubError("unknown record status");
    r.status = *status;
    r.files_changed = j.at("files_changed").get<int>();
    r.findings_count = j.at("findings_count").get<int>();
    r.edits_count = j.at("edits_count").get<int>();
    r.started_at = j.at("started_at").get<std::int64_t>();
    r.finished_at = j.at("finished_at").get<std::int64_t>();
    r.message = j.value("message", "");
    return r;
  } catch (json::exception const& e) {
    throw HubError(std::string{"malformed record: "} + e.what());
  }
}

auto new_id() -> std::string {
  thread_local std::mt19937_64 rng{std::random_device{}()};
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  for (int part = 0; part < 2; ++part) {
    auto v = rng();
    for (int i = 0; i < 16; ++i) {
      out += kHex[v & 0xF];
      v >>= 4;
    }
  }
  return out;
}

}  // namespace autodoc::hub
