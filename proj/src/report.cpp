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


#include "autodoc/report.hpp"

#include "json.hpp"

namespace autodoc {

using nlohmann::json;

auto Report::finding_count() const -> std::size_t {
  return static_cast<std::size_t>(
      std::count_if(items.begin(), items.end(), [](auto const& i) { return i.finding.has_value(); }));
}

auto Report::error_count() const -> std::size_t {
  return static_cast<std::size_t>(
      std::count_if(items.begin(), items.end(), [](auto const& i) { return i.error.has_value(); }));
}

auto emit_text(Report const& report, std::size_t files_scanned) -> std::string {
  std::string out;
  for (auto const& item : report.items) {
    if (item.error) {
      out += item.path + ": error: " + *item.error + "\n";
      continue;
    }
    auto const& f = *item.finding;
    out += item.path + ":" + std::to_string(f.line) + ": " + std::string{to_string(f.rule)} +
           " [" + std::string{to_string(f.severity)} + "] " + f.entity_name + ": " +
           f.message + (f.fix ? " (fixable)" : "") + "\n";
  }
  out += std::to_string(report.finding_count()) + " finding(s), " +
         std::to_string(report.error_count()) + " error(s) in " +
         std::to_string(files_scanned) + " file(s)\n";
  return out;
}

auto emit_json(Report const& report) -> std::string {
  std::string out;
  for (auto const& item : report.items) {
    json j;
    j["path"] = item.path;
    if (item.error) {
      j["error"] = *item.error;
    } else {
      auto const& f = *item.finding;
      j["rule"] = to_string(f.rule);
      j["severity"] = to_string(f.severity);
      j["entity_id"] = f.entity_id;
      j["entity"] = f.entity_name;
      j["line"] = f.line;
      j["subject"] = f.subject;
      j["message"] = f.message;
      if (f.fix) {
        j["fix"] = json{{"kind", to_string(f.fix->kind)}, {"subject", f.fix->subject}};
      } else {
        j["fix"] = nullptr;
      }
    }
    out += j.dump() + "\n";
  }
  return out;
}

auto parse_json_report(std::string_view text) -> Report {
  Report report;
  std::size_t pos = 0;
  std::size_t line_no = 0;
  while (pos < text.size()) {
    auto nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    auto const line = text.substr(pos, nl - pos);
    pos = nl + 1;
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string_view::npos) continue;
    try {
      auto const j = json::parse(line);
      ReportItem item;
      item.path = j.at("path").get<std::string>();
      if (j.contains("error")) {
        item.error = j.at("error").get<std::string>();
      } else {
        Finding f;
        auto const rule = rule_from_string(j.at("rule").get<std::string>());
        auto const severity = severity_from_string(j.at("severity").get<std::string>());
        if (!rule || !severity) throw Error("unknown rule or severity");
        f.rule = *rule;
        f.severity = *severity;
        f.entity_id = j.at("entity_id").get<std::string>();
        f.entity_name = j.at("entity").get<std::string>();
        f.line = j.at("line").get<std::size_t>();
        f.subject = j.at("subject").get<std::string>();
        f.message = j.at("message").get<std::string>();
        if (auto const& fix = j.at("fix"); !fix.is_null()) {
          auto const kind = fix_kind_from_string(fix.at("kind").get<std::string>());
          if (!kind) throw Error("unknown fix kind");
          f.fix = FixIntent{*kind, fix.at("subject").get<std::string>()};
        }
        item.finding = std::move(f);
      }
      report.items.push_back(std::move(item));
    } catch (json::exception const& e) {
      throw Error("report line " + std::to_string(line_no) + ": " + e.what());
    } catch (Error const& e) {
      throw Error("report line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return report;
}

}  // namespace autodoc
