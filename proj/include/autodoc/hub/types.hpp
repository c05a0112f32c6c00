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

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>

#include "autodoc/source_model.hpp"

namespace autodoc::hub {

/// Milliseconds since the epoch. Injectable so tests control time.
using Clock = std::function<std::int64_t()>;

[[nodiscard]] auto system_clock() -> Clock;

class HubError : public Error {
 public:
  using Error::Error;
};

class MalformedPayload : public HubError {
 public:
  using HubError::HubError;
};

struct HookEvent {
  std::string repo_ref;  // clone URL or local path
  std::string branch;
  std::string head_commit;
  std::string delivery_id;
  std::optional<std::string> before;  // previous head, when the forge sends it

  auto operator==(HookEvent const&) const -> bool = default;
};

inline constexpr int kHookSchemaVersion = 1;

/// Validates and decodes the native payload. Throws MalformedPayload.
[[nodiscard]] auto parse_hook_event(std::string_view body) -> HookEvent;
[[nodiscard]] auto hook_event_to_json(HookEvent const& event) -> std::string;

inline constexpr std::string_view kAutodocSuffix = "-autodoc";

/// `branch` + "-autodoc", or nothing for branches that already carry the
/// suffix (the loop guard).
[[nodiscard]] auto derive_branch_name(std::string_view branch) -> std::optional<std::string>;

/// Lowercase hex HMAC-SHA256 of `body` under `secret`.
[[nodiscard]] auto sign_body(std::string_view secret, std::string_view body) -> std::string;

/// Constant-time check of a signature header; accepts an optional
/// "sha256=" prefix.
[[nodiscard]] auto verify_signature(std::string_view secret, std::string_view body,
                                    std::string_view header) -> bool;

inline constexpr std::string_view kSignatureHeader = "X-Autodoc-Signature";

enum class RunStatus { kDone, kNoop, kSkipped, kFailed };

[[nodiscard]] auto to_string(RunStatus status) -> std::string_view;
[[nodiscard]] auto run_status_from_string(std::string_view text) -> std::optional<RunStatus>;

struct RunRecord {
  std::string id;
  std::string repo_ref;
  std::string branch;
  std::string source_commit;
  std::optional<std::string> result_branch;
  std::optional<std::string> result_commit;
  std::optional<std::string> result_tree;
  RunStatus status{RunStatus::kNoop};
  int files_changed{0};
  int findings_count{0};
  int edits_count{0};
  std::int64_t started_at{0};
  std::int64_t finished_at{0};
  std::string message;

  auto operator==(RunRecord const&) const -> bool = default;

  /// (repo, branch, commit): the identity duplicate deliveries collapse to.
  [[nodiscard]] auto dedupe_key() const -> std::string;
};

[[nodiscard]] auto make_dedupe_key(std::string_view repo, std::string_view branch,
                                   std::string_view commit) -> std::string;

[[nodiscard]] auto record_to_json(RunRecord const& record) -> std::string;
[[nodiscard]] auto record_from_json(std::string_view line) -> RunRecord;

/// Random 128-bit identifier in hex.
[[nodiscard]] auto new_id() -> std::string;

}  // namespace autodoc::hub
