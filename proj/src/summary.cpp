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


#include "autodoc/summary.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <regex>

#include "httplib.h"
#include "json.hpp"
#include "text_util.hpp"

namespace autodoc {

namespace {

using json = nlohmann::json;

constexpr std::array<std::string_view, 4> kPredicates{"is", "has", "can", "should"};

auto is_upper(char c) -> bool { return c >= 'A' && c <= 'Z'; }
auto is_lower(char c) -> bool { return c >= 'a' && c <= 'z'; }
auto is_digit(char c) -> bool { return c >= '0' && c <= '9'; }
auto is_alpha(char c) -> bool {
  return is_upper(c) || is_lower(c) || static_cast<unsigned char>(c) >= 0x80;
}

auto capitalize(std::string word) -> std::string {
  if (!word.empty() && is_lower(word[0])) word[0] = static_cast<char>(word[0] - 'a' + 'A');
  return word;
}

auto join_words(std::vector<std::string> const& words, std::size_t from) -> std::string {
  std::string out;
  for (auto i = from; i < words.size(); ++i) {
    if (!out.empty()) out += ' ';
    out += words[i];
  }
  return out;
}

// Byte offset just past the first `count` code points of `text`.
auto code_point_prefix(std::string_view text, std::size_t count) -> std::size_t {
  std::size_t i = 0;
  while (i < text.size() && count > 0) {
    ++i;
    while (i < text.size() && (static_cast<unsigned char>(text[i]) & 0xC0) == 0x80) ++i;
    --count;
  }
  return i;
}

auto utf8_floor(std::string_view text, std::size_t pos) -> std::size_t {
  while (pos > 0 && pos < text.size() &&
         (static_cast<unsigned char>(text[pos]) & 0xC0) == 0x80) {
    --pos;
  }
  return pos;
}

struct Endpoint {
  std::string base;  // scheme://host:port
  std::string path;  // request path
};

auto split_endpoint(std::string const& endpoint) -> Endpoint {
  static std::regex const re(R"(^((?:https?://)?[^/]+)(/.*)?$)");
  std::smatch m;
  if (!std::regex_match(endpoint, m, re)) {
    throw ConnectionFailed("invalid summary endpoint '" + endpoint + "'");
  }
  std::string prefix = m[2].matched ? m[2].str() : "";
  while (!prefix.empty() && prefix.back() == '/') prefix.pop_back();
  return Endpoint{m[1].str(), prefix + "/v1/summarize"};
}

auto normalize_space(std::string_view text) -> std::string {
  std::string out;
  bool space = false;
  for (char c : text) {
    if (text::is_space(c)) {
      space = !out.empty();
      continue;
    }
    if (space) out += ' ';
    space = false;
    out += c;
  }
  return out;
}

}  // namespace

auto to_string(SummarySource source) -> std::string_view {
  switch (source) {
    case SummarySource::kHumanExisting:
      return "human_existing";
    case SummarySource::kRemote:
      return "remote";
    case SummarySource::kLocalBaseline:
      return "local_baseline";
    case SummarySource::kNone:
      return "none";
  }
  return "none";
}

auto identifier_tokens(std::string_view name) -> std::vector<std::string> {
  std::vector<std::string> tokens;
  std::string current;
  auto flush = [&] {
    if (!current.empty()) tokens.push_back(std::move(current));
    current.clear();
  };
  for (std::size_t i = 0; i < name.size(); ++i) {
    auto const c = name[i];
    if (!is_alpha(c) && !is_digit(c)) {
      flush();
      continue;
    }
    if (!current.empty()) {
      auto const prev = name[i - 1];
      bool const next_lower = i + 1 < name.size() && is_lower(name[i + 1]);
      bool boundary = false;
      if (is_upper(c) && (is_lower(prev) || is_digit(prev))) boundary = true;
      // The last capital of an acronym starts the next word: HTTPResponse.
      if (is_upper(c) && is_upper(prev) && next_lower) boundary = true;
      if (is_digit(c) != is_digit(prev)) boundary = true;
      if (boundary) flush();
    }
    current += is_upper(c) ? static_cast<char>(c - 'A' + 'a') : c;
  }
  flush();
  return tokens;
}

auto summarize_local(std::string_view name) -> SummaryResponse {
  SummaryResponse out;
  out.confidence = kBaselineConfidence;
  out.model_id = std::string{kBaselineModelId};
  auto const tokens = identifier_tokens(name);
  if (tokens.empty()) {
    out.summary = "No summary available.";
    return out;
  }
  auto const& first = tokens.front();
  if (std::find(kPredicates.begin(), kPredicates.end(), first) != kPredicates.end()) {
    auto const rest = join_words(tokens, 1);
    out.summary = rest.empty() ? "Check whether." : "Check whether " + rest + ".";
    return out;
  }
  // Leading verbs (get, parse, ...) and any other first word read the same
  // way once capitalized, so no verb table is needed here.
  auto words = tokens;
  words.front() = capitalize(words.front());
  out.summary = join_words(words, 0) + ".";
  return out;
}

auto truncate_summary(std::string_view text, int max_chars) -> std::string {
  auto const trimmed = text::trim(text);
  if (max_chars <= 0) return {};
  auto const limit = static_cast<std::size_t>(max_chars);
  auto const cut = code_point_prefix(trimmed, limit);
  if (cut >= trimmed.size()) return std::string{trimmed};
  if (text::is_space(trimmed[cut])) return std::string{text::trim_right(trimmed.substr(0, cut))};
  auto const head = trimmed.substr(0, cut);
  auto const space = head.find_last_of(" \t\n");
  if (space == std::string_view::npos) {
    // A single word longer than the limit: keep a hard prefix.
    return std::string{head};
  }
  return std::string{text::trim_right(head.substr(0, space))};
}

auto truncate_snippet(std::string_view code, int max_bytes) -> std::string {
  if (max_bytes <= 0) return {};
  auto const limit = static_cast<std::size_t>(max_bytes);
  if (code.size() <= limit) return std::string{code};
  auto const nl = code.rfind('\n', limit - 1);
  if (nl != std::string_view::npos) return std::string{code.substr(0, nl + 1)};
  return std::string{code.substr(0, utf8_floor(code, limit))};
}

auto make_request(SourceUnit const& unit, CodeEntity const& entity,
                  SummaryConfig const& config) -> SummaryRequest {
  SummaryRequest req;
  req.language = std::string{to_string(unit.language())};
  req.entity_kind = std::string{to_string(entity.kind)};
  req.name = entity.name.empty() ? std::string{"module"} : entity.name;
  req.max_chars = config.max_chars;
  if (entity.kind == EntityKind::kModule) {
    req.code = truncate_snippet(unit.content(), config.max_snippet_bytes);
    return req;
  }
  req.signature = std::string{unit.text(entity.header_span)};
  auto const begin = std::min(entity.header_span.begin, entity.body_span.begin);
  auto const end = std::max(entity.header_span.end, entity.body_span.end);
  req.code = truncate_snippet(unit.text(ByteRange{begin, end}), config.max_snippet_bytes);
  return req;
}

auto request_to_json(SummaryRequest const& r) -> std::string {
  json j{{"protocol_version", r.protocol_version},
         {"language", r.language},
         {"entity_kind", r.entity_kind},
         {"name", r.name},
         {"signature", r.signature},
         {"code", r.code},
         {"max_chars", r.max_chars}};
  return j.dump();
}

auto request_from_json(std::string_view body) -> SummaryRequest {
  try {
    auto const j = json::parse(body);
    SummaryRequest r;
    r.protocol_version = j.at("protocol_version").get<int>();
    r.language = j.at("language").get<std::string>();
    r.entity_kind = j.at("entity_kind").get<std::string>();
    r.name = j.at("name").get<std::string>();
    r.signature = j.at("signature").get<std::string>();
    r.code = j.at("code").get<std::string>();
    r.max_chars = j.at("max_chars").get<int>();
    if (r.name.empty()) throw ProtocolError("request name is empty");
    return r;
  } catch (json::exception const& e) {
    throw ProtocolError(std::string{"malformed summary request: "} + e.what());
  }
}

auto response_to_json(SummaryResponse const& r) -> std::string {
  json j{{"summary", r.summary}, {"confidence", r.confidence}, {"model_id", r.model_id}};
  return j.dump();
}

auto response_from_json(std::string_view body) -> SummaryResponse {
  json j;
  try {
    j = json::parse(body);
  } catch (json::exception const& e) {
    throw ProtocolError(std::string{"summary response is not JSON: "} + e.what());
  }
  if (!j.is_object()) throw ProtocolError("summary response is not an object");
  auto const summary = j.find("summary");
  auto const confidence = j.find("confidence");
  auto const model = j.find("model_id");
  if (summary == j.end() || !summary->is_string()) {
    throw ProtocolError("summary response lacks a string 'summary'");
  }
  if (confidence == j.end() || !confidence->is_number()) {
    throw ProtocolError("summary response lacks a numeric 'confidence'");
  }
  if (model == j.end() || !model->is_string()) {
    throw ProtocolError("summary response lacks a string 'model_id'");
  }
  SummaryResponse r;
  r.summary = summary->get<std::string>();
  r.confidence = confidence->get<double>();
  r.model_id = model->get<std::string>();
  if (text::trim(r.summary).empty()) throw ProtocolError("summary is empty");
  if (!std::isfinite(r.confidence) || r.confidence < 0.0 || r.confidence > 1.0) {
    throw ProtocolError("confidence " + confidence->dump() + " is outside [0, 1]");
  }
  return r;
}

auto summarize_remote(SummaryRequest const& request, std::string const& endpoint,
                      int timeout_ms) -> SummaryResponse {
  if (endpoint.empty()) throw ConnectionFailed("no summary endpoint configured");
  auto const target = split_endpoint(endpoint);
  httplib::Client client{target.base};
  if (!client.is_valid()) throw ConnectionFailed("invalid summary endpoint '" + endpoint + "'");
  auto const timeout = std::chrono::milliseconds{std::max(timeout_ms, 1)};
  client.set_connection_timeout(timeout);
  client.set_read_timeout(timeout);
  client.set_write_timeout(timeout);
  client.set_keep_alive(false);

  auto const started = std::chrono::steady_clock::now();
  auto result = client.Post(target.path, request_to_json(request), "application/json");
  if (!result) {
    auto const err = result.error();
    auto const elapsed = std::chrono::steady_clock::now() - started;
    bool const timed_out =
        err == httplib::Error::ConnectionTimeout ||
        ((err == httplib::Error::Read || err == httplib::Error::Write) &&
         elapsed >= timeout * 9 / 10);
    if (timed_out) {
      throw TimeoutError("summary request timed out after " +
                         std::to_string(timeout.count()) + " ms");
    }
    throw ConnectionFailed("summary request failed: " + httplib::to_string(err));
  }
  if (result->status < 200 || result->status >= 300) {
    throw ServerError("summary server answered " + std::to_string(result->status),
                      result->status);
  }
  return response_from_json(result->body);
}

auto summarize(SummaryRequest const& request, SummaryConfig const& config) -> Summarized {
  Summarized out;
  if (config.provider == ProviderKind::kRemote) {
    try {
      out.response = summarize_remote(request, config.endpoint, config.timeout_ms);
      out.response.summary = normalize_space(out.response.summary);
      out.source = SummarySource::kRemote;
      return out;
    } catch (std::exception const& e) {
      out.remote_error = e.what();
    }
  }
  out.response = summarize_local(request.name);
  out.source = SummarySource::kLocalBaseline;
  return out;
}

}  // namespace autodoc
