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


#include "autodoc/config.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <variant>

#include "text_util.hpp"

namespace autodoc {

namespace {

using Value = std::variant<std::string, std::int64_t, bool, std::vector<std::string>>;

auto type_name(Value const& v) -> std::string_view {
  switch (v.index()) {
    case 0:
      return "string";
    case 1:
      return "integer";
    case 2:
      return "boolean";
    default:
      return "string array";
  }
}

class Reader {
 public:
  Reader(std::string_view text, std::size_t line) : text_{text}, line_{line} {}

  [[nodiscard]] auto done() -> bool {
    skip_space();
    return pos_ >= text_.size() || text_[pos_] == '#';
  }

  auto value() -> Value {
    skip_space();
    if (pos_ >= text_.size()) fail("missing value");
    auto const c = text_[pos_];
    if (c == '"' || c == '\'') return string();
    if (c == '[') return array();
    if (text_.substr(pos_).starts_with("true")) {
      pos_ += 4;
      return true;
    }
    if (text_.substr(pos_).starts_with("false")) {
      pos_ += 5;
      return false;
    }
    return integer();
  }

  [[noreturn]] void fail(std::string const& what) const {
    throw ConfigError("line " + std::to_string(line_) + ": " + what);
  }

 private:
  void skip_space() {
    while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\t' ||
                                   text_[pos_] == '\n' || text_[pos_] == '\r')) {
      if (text_[pos_] == '\n') ++line_;
      ++pos_;
    }
  }

  void skip_space_and_comments() {
    for (;;) {
      skip_space();
      if (pos_ < text_.size() && text_[pos_] == '#') {
        while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
        continue;
      }
      return;
    }
  }

  auto string() -> std::string {
    auto const quote = text_[pos_++];
    std::string out;
    while (pos_ < text_.size() && text_[pos_] != quote) {
      auto c = text_[pos_++];
      if (c == '\n') fail("unterminated string");
      if (c == '\\' && quote == '"') {
        if (pos_ >= text_.size()) fail("unterminated string");
        c = text_[pos_++];
        switch (c) {
          case 'n':
            out += '\n';
            break;
          case 't':
            out += '\t';
            break;
          case '"':
          case '\\':
            out += c;
            break;
          default:
            fail(std::string{"unsupported escape \\"} + c);
        }
        continue;
      }
      out += c;
    }
    if (pos_ >= text_.size()) fail("unterminated string");
    ++pos_;
    return out;
  }

  auto array() -> std::vector<std::string> {
    ++pos_;
    std::vector<std::string> out;
    for (;;) {
      skip_space_and_comments();
      if (pos_ >= text_.size()) fail("unterminated array");
      if (text_[pos_] == ']') {
        ++pos_;
        return out;
      }
      if (text_[pos_] != '"' && text_[pos_] != '\'') fail("arrays may hold strings only");
      out.push_back(string());
      skip_space_and_comments();
      if (pos_ < text_.size() && text_[pos_] == ',') {
        ++pos_;
      } else if (pos_ < text_.size() && text_[pos_] != ']') {
        fail("expected ',' or ']' in array");
      }
    }
  }

  auto integer() -> std::int64_t {
    std::string digits;
    auto const start = pos_;
    if (text_[pos_] == '+' || text_[pos_] == '-') digits += text_[pos_++];
    while (pos_ < text_.size() &&
           (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
      if (text_[pos_] != '_') digits += text_[pos_];
      ++pos_;
    }
    std::int64_t out = 0;
    auto const* first = digits.data() + (digits.starts_with('+') ? 1 : 0);
    auto const [ptr, ec] = std::from_chars(first, digits.data() + digits.size(), out);
    if (ec != std::errc{} || ptr != digits.data() + digits.size() || pos_ == start) {
      fail("invalid value");
    }
    return out;
  }

  std::string_view text_;
  std::size_t line_;
  std::size_t pos_{0};
};

auto valid_key(std::string_view key) -> bool {
  if (key.empty() || key.front() == '.' || key.back() == '.') return false;
  return std::all_of(key.begin(), key.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == '.';
  });
}

// Flattens the document into dotted keys in order of appearance.
auto flatten(std::string_view text) -> std::vector<std::pair<std::string, Value>> {
  std::vector<std::pair<std::string, Value>> out;
  std::map<std::string, std::size_t> seen;
  std::string section;
  std::size_t pos = 0;
  std::size_t line = 0;
  while (pos < text.size()) {
    auto nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    ++line;
    auto const raw = text.substr(pos, nl - pos);
    auto const stmt = text::trim(raw);
    auto const stmt_line = line;
    pos = nl + 1;
    if (stmt.empty() || stmt.front() == '#') continue;
    if (stmt.front() == '[') {
      auto const close = stmt.find(']');
      if (close == std::string_view::npos) {
        throw ConfigError("line " + std::to_string(line) + ": unterminated section header");
      }
      auto const rest = text::trim(stmt.substr(close + 1));
      section = std::string{text::trim(stmt.substr(1, close - 1))};
      if (!valid_key(section) || (!rest.empty() && rest.front() != '#')) {
        throw ConfigError("line " + std::to_string(line) + ": invalid section header");
      }
      continue;
    }
    auto const eq = stmt.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("line " + std::to_string(line) + ": expected key = value");
    }
    auto const key_part = std::string{text::trim(stmt.substr(0, eq))};
    if (!valid_key(key_part)) {
      throw ConfigError("line " + std::to_string(line) + ": invalid key '" + key_part + "'");
    }
    auto key = section.empty() ? key_part : section + "." + key_part;

    // A value may span lines when it is an array; feed the reader the rest.
    auto const value_begin = static_cast<std::size_t>(stmt.data() - text.data()) + eq + 1;
    auto value_text = text.substr(value_begin);
    auto const first_nl = value_text.find('\n');
    bool const opens_array = text::trim(value_text.substr(0, first_nl)).starts_with('[');
    if (!opens_array) value_text = value_text.substr(0, first_nl);
    Reader reader{value_text, stmt_line};
    auto value = reader.value();
    if (opens_array) {
      // Count the lines the array consumed and resume after it.
      auto const consumed = std::string_view{value_text}.substr(0, [&] {
        std::size_t depth = 0;
        bool in_str = false;
        char q = 0;
        for (std::size_t i = 0; i < value_text.size(); ++i) {
          auto const c = value_text[i];
          if (in_str) {
            if (c == '\\' && q == '"') {
              ++i;
            } else if (c == q) {
              in_str = false;
            }
          } else if (c == '"' || c == '\'') {
            in_str = true;
            q = c;
          } else if (c == '[') {
            ++depth;
          } else if (c == ']' && --depth == 0) {
            return i + 1;
          }
        }
        return value_text.size();
      }());
      auto const end_abs = value_begin + consumed.size();
      line += static_cast<std::size_t>(std::count(consumed.begin(), consumed.end(), '\n'));
      auto tail_end = text.find('\n', end_abs);
      if (tail_end == std::string_view::npos) tail_end = text.size();
      Reader tail{text.substr(end_abs, tail_end - end_abs), line};
      if (!tail.done()) tail.fail("unexpected text after value of '" + key + "'");
      pos = tail_end + 1;
    } else if (!reader.done()) {
      reader.fail("unexpected text after value of '" + key + "'");
    }
    if (seen.contains(key)) {
      throw ConfigError("line " + std::to_string(stmt_line) + ": duplicate key '" + key + "'");
    }
    seen.emplace(key, out.size());
    out.emplace_back(std::move(key), std::move(value));
  }
  return out;
}

template <typename T>
auto expect(std::string const& key, Value const& value, std::string_view wanted) -> T const& {
  if (auto const* v = std::get_if<T>(&value)) return *v;
  throw ConfigError("key '" + key + "': expected " + std::string{wanted} + ", got " +
                    std::string{type_name(value)});
}

auto as_string(std::string const& key, Value const& v) -> std::string const& {
  return expect<std::string>(key, v, "string");
}
auto as_bool(std::string const& key, Value const& v) -> bool {
  return expect<bool>(key, v, "boolean");
}
auto as_list(std::string const& key, Value const& v) -> std::vector<std::string> const& {
  return expect<std::vector<std::string>>(key, v, "string array");
}
auto as_int(std::string const& key, Value const& v, std::int64_t lo, std::int64_t hi)
    -> std::int64_t {
  auto const n = expect<std::int64_t>(key, v, "integer");
  if (n < lo || n > hi) {
    throw ConfigError("key '" + key + "': " + std::to_string(n) + " is out of range [" +
                      std::to_string(lo) + ", " + std::to_string(hi) + "]");
  }
  return n;
}

// Seconds, either as an integer or as a string with an s/m/h/d unit.
auto as_duration(std::string const& key, Value const& v) -> std::int64_t {
  if (std::holds_alternative<std::int64_t>(v)) {
    return as_int(key, v, 0, std::int64_t{1} << 40);
  }
  auto const& text = as_string(key, v);
  std::int64_t amount = 0;
  auto const [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), amount);
  auto const unit = std::string_view{ptr, static_cast<std::size_t>(text.data() + text.size() - ptr)};
  static std::map<std::string_view, std::int64_t> const kUnits{
      {"s", 1}, {"m", 60}, {"h", 3600}, {"d", 86400}};
  auto const it = kUnits.find(unit);
  if (ec != std::errc{} || amount < 0 || it == kUnits.end()) {
    throw ConfigError("key '" + key + "': expected a duration such as \"7d\", got \"" + text +
                      "\"");
  }
  return amount * it->second;
}

using Setter = std::function<void(Config&, std::string const&, Value const&)>;

auto setters() -> std::map<std::string, Setter> const& {
  static std::map<std::string, Setter> const table{
      {"target_style",
       [](Config& c, std::string const& k, Value const& v) {
         auto const& s = as_string(k, v);
         auto const style = style_from_string(s);
         if (!style || *style == DocStyle::kUnknown || *style == DocStyle::kJavadoc) {
           throw ConfigError("key '" + k + "': unknown style \"" + s +
                             "\" (expected rest, google or numpy)");
         }
         c.target_style = *style;
       }},
      {"languages",
       [](Config& c, std::string const& k, Value const& v) {
         c.languages.clear();
         for (auto const& s : as_list(k, v)) {
           auto const lang = language_from_string(s);
           if (!lang) throw ConfigError("key '" + k + "': unknown language \"" + s + "\"");
           if (std::find(c.languages.begin(), c.languages.end(), *lang) == c.languages.end()) {
             c.languages.push_back(*lang);
           }
         }
       }},
      {"rules.disabled",
       [](Config& c, std::string const& k, Value const& v) {
         c.disabled.clear();
         for (auto const& s : as_list(k, v)) {
           auto const rule = rule_from_string(s);
           if (!rule) throw ConfigError("key '" + k + "': unknown rule \"" + s + "\"");
           c.disabled.insert(*rule);
         }
       }},
      {"check_private",
       [](Config& c, std::string const& k, Value const& v) { c.check_private = as_bool(k, v); }},
      {"placeholder_text",
       [](Config& c, std::string const& k, Value const& v) {
         auto const& s = as_string(k, v);
         if (text::is_blank(s) || s.find('\n') != std::string::npos) {
           throw ConfigError("key '" + k + "': must be a non-empty single line");
         }
         c.placeholder_text = s;
       }},
      {"document_init_under_class",
       [](Config& c, std::string const& k, Value const& v) {
         c.document_init_under_class = as_bool(k, v);
       }},
      {"exclude",
       [](Config& c, std::string const& k, Value const& v) { c.exclude = as_list(k, v); }},
      {"jobs",
       [](Config& c, std::string const& k, Value const& v) {
         c.jobs = static_cast<int>(as_int(k, v, 0, 1024));
       }},
      {"summary.provider",
       [](Config& c, std::string const& k, Value const& v) {
         auto const& s = as_string(k, v);
         if (s == "local") {
           c.summary.provider = ProviderKind::kLocal;
         } else if (s == "remote") {
           c.summary.provider = ProviderKind::kRemote;
         } else {
           throw ConfigError("key '" + k + "': expected \"local\" or \"remote\", got \"" + s +
                             "\"");
         }
       }},
      {"summary.endpoint",
       [](Config& c, std::string const& k, Value const& v) {
         c.summary.endpoint = as_string(k, v);
       }},
      {"summary.timeout_ms",
       [](Config& c, std::string const& k, Value const& v) {
         c.summary.timeout_ms = static_cast<int>(as_int(k, v, 1, 600000));
       }},
      {"summary.max_chars",
       [](Config& c, std::string const& k, Value const& v) {
         c.summary.max_chars = static_cast<int>(as_int(k, v, 8, 10000));
       }},
      {"summary.max_snippet_bytes",
       [](Config& c, std::string const& k, Value const& v) {
         c.summary.max_snippet_bytes = static_cast<int>(as_int(k, v, 64, 1 << 24));
       }},
      {"hub.host",
       [](Config& c, std::string const& k, Value const& v) { c.hub.host = as_string(k, v); }},
      {"hub.port",
       [](Config& c, std::string const& k, Value const& v) {
         c.hub.port = static_cast<int>(as_int(k, v, 0, 65535));
       }},
      {"hub.secret",
       [](Config& c, std::string const& k, Value const& v) { c.hub.secret = as_string(k, v); }},
      {"hub.storage_path",
       [](Config& c, std::string const& k, Value const& v) {
         c.hub.storage_path = as_string(k, v);
       }},
      {"hub.workers.high",
       [](Config& c, std::string const& k, Value const& v) {
         c.hub.workers_high = static_cast<int>(as_int(k, v, 1, 256));
       }},
      {"hub.workers.low",
       [](Config& c, std::string const& k, Value const& v) {
         c.hub.workers_low = static_cast<int>(as_int(k, v, 1, 256));
       }},
      {"hub.visibility_timeout_ms",
       [](Config& c, std::string const& k, Value const& v) {
         c.hub.visibility_timeout_ms = static_cast<int>(as_int(k, v, 1, 86400000));
       }},
      {"hub.max_attempts",
       [](Config& c, std::string const& k, Value const& v) {
         c.hub.max_attempts = static_cast<int>(as_int(k, v, 1, 1000));
       }},
      {"hub.retention",
       [](Config& c, std::string const& k, Value const& v) { c.hub.retention = as_duration(k, v); }},
      {"hub.scope",
       [](Config& c, std::string const& k, Value const& v) {
         auto const& s = as_string(k, v);
         if (s == "changed") {
           c.hub.scope = RunScope::kChanged;
         } else if (s == "all") {
           c.hub.scope = RunScope::kAll;
         } else {
           throw ConfigError("key '" + k + "': expected \"changed\" or \"all\", got \"" + s +
                             "\"");
         }
       }},
      {"hub.fixed_timestamps",
       [](Config& c, std::string const& k, Value const& v) {
         c.hub.fixed_timestamps = as_int(k, v, 0, std::int64_t{253402300799});
       }},
      {"hub.maintenance_interval_s",
       [](Config& c, std::string const& k, Value const& v) {
         c.hub.maintenance_interval_s = static_cast<int>(as_int(k, v, 0, 86400 * 365));
       }},
  };
  return table;
}

}  // namespace

auto Config::handles(Language lang) const -> bool {
  return std::find(languages.begin(), languages.end(), lang) != languages.end();
}

auto parse_config(std::string_view text) -> Config {
  Config config;
  auto const& table = setters();
  for (auto const& [key, value] : flatten(text)) {
    auto const it = table.find(key);
    if (it == table.end()) throw ConfigError("unknown key '" + key + "'");
    it->second(config, key, value);
  }
  return config;
}

auto load_config(std::string const& path) -> Config {
  auto chosen = path;
  if (chosen.empty()) {
    if (auto const* env = std::getenv("AUTODOC_CONFIG"); env != nullptr && *env != '\0') {
      chosen = env;
    }
  }
  if (chosen.empty()) return Config{};
  std::ifstream in{chosen, std::ios::binary};
  if (!in) throw ConfigError("cannot read config file '" + chosen + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_config(buf.str());
  } catch (ConfigError const& e) {
    throw ConfigError(chosen + ": " + e.what());
  }
}

}  // namespace autodoc
