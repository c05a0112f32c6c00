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

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "autodoc/config.hpp"
#include "autodoc/source_model.hpp"

namespace autodoc {

inline constexpr int kProtocolVersion = 1;
inline constexpr double kBaselineConfidence = 0.2;
inline constexpr std::string_view kBaselineModelId = "baseline-v1";

struct SummaryRequest {
  int protocol_version{kProtocolVersion};
  std::string language;
  std::string entity_kind;
  std::string name;
  std::string signature;
  std::string code;
  int max_chars{120};

  auto operator==(SummaryRequest const&) const -> bool = default;
};

struct SummaryResponse {
  std::string summary;
  double confidence{0.0};
  std::string model_id;

  auto operator==(SummaryResponse const&) const -> bool = default;
};

enum class SummarySource { kHumanExisting, kRemote, kLocalBaseline, kNone };

[[nodiscard]] auto to_string(SummarySource source) -> std::string_view;

class ProviderError : public Error {
 public:
  using Error::Error;
};
class TimeoutError : public ProviderError {
 public:
  using ProviderError::ProviderError;
};
class ConnectionFailed : public ProviderError {
 public:
  using ProviderError::ProviderError;
};
class ProtocolError : public ProviderError {
 public:
  using ProviderError::ProviderError;
};
class ServerError : public ProviderError {
 public:
  ServerError(std::string const& message, int status)
      : ProviderError(message), status_{status} {}
  [[nodiscard]] auto status() const noexcept -> int { return status_; }

 private:
  int status_;
};

/// Splits an identifier on underscores, camel-case humps (acronym aware) and
/// letter/digit boundaries, lowercasing every token.
[[nodiscard]] auto identifier_tokens(std::string_view name) -> std::vector<std::string>;

/// Deterministic template summary of an identifier.
[[nodiscard]] auto summarize_local(std::string_view name) -> SummaryResponse;

/// Cuts `text` to at most `max_chars` code points, ending on a whole word.
[[nodiscard]] auto truncate_summary(std::string_view text, int max_chars) -> std::string;

/// Cuts `code` to at most `max_bytes`, ending on a line boundary.
[[nodiscard]] auto truncate_snippet(std::string_view code, int max_bytes) -> std::string;

[[nodiscard]] auto make_request(SourceUnit const& unit, CodeEntity const& entity,
                                SummaryConfig const& config) -> SummaryRequest;

[[nodiscard]] auto request_to_json(SummaryRequest const& request) -> std::string;
/// Throws ProtocolError on malformed bodies.
[[nodiscard]] auto request_from_json(std::string_view body) -> SummaryRequest;
[[nodiscard]] auto response_to_json(SummaryResponse const& response) -> std::string;
/// Validates a response body; violations throw ProtocolError.
[[nodiscard]] auto response_from_json(std::string_view body) -> SummaryResponse;

/// One POST to `endpoint`/v1/summarize. Throws TimeoutError,
/// ConnectionFailed, ProtocolError or ServerError.
[[nodiscard]] auto summarize_remote(SummaryRequest const& request,
                                    std::string const& endpoint, int timeout_ms)
    -> SummaryResponse;

struct Summarized {
  SummaryResponse response;
  SummarySource source{SummarySource::kLocalBaseline};
  std::optional<std::string> remote_error;
};

/// Never throws: remote failures fall back to the baseline.
[[nodiscard]] auto summarize(SummaryRequest const& request, SummaryConfig const& config)
    -> Summarized;

/// Summary source used by the synthesizer. The default forwards to summarize().
class SummaryProvider {
 public:
  explicit SummaryProvider(SummaryConfig config) : config_{std::move(config)} {}
  virtual ~SummaryProvider() = default;
  SummaryProvider(SummaryProvider const&) = delete;
  auto operator=(SummaryProvider const&) -> SummaryProvider& = delete;

  [[nodiscard]] virtual auto provide(SummaryRequest const& request) -> Summarized {
    return summarize(request, config_);
  }
  [[nodiscard]] auto config() const -> SummaryConfig const& { return config_; }

 private:
  SummaryConfig config_;
};

}  // namespace autodoc
