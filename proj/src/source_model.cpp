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

#include "autodoc/source_model.hpp"

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <map>

#include "adapters.hpp"

namespace autodoc {

auto to_string(Language lang) -> std::string_view {
  switch (lang) {
    case Language::kPython:
      return "python";
    case Language::kJsdocFamily:
      return "jsdoc_family";
  }
  return "unknown";
}

auto language_from_string(std::string_view text) -> std::optional<Language> {
  if (text == "python") return Language::kPython;
  if (text == "jsdoc_family") return Language::kJsdocFamily;
  return std::nullopt;
}

auto to_string(EntityKind kind) -> std::string_view {
  switch (kind) {
    case EntityKind::kModule:
      return "module";
    case EntityKind::kClass:
      return "class";
    case EntityKind::kFunction:
      return "function";
    case EntityKind::kMethod:
      return "method";
  }
  return "unknown";
}

auto language_for_path(std::string_view path) -> std::optional<Language> {
  auto const ext = std::filesystem::path{path}.extension().string();
  if (ext == ".py" || ext == ".pyi") return Language::kPython;
  if (ext == ".js" || ext == ".mjs" || ext == ".cjs" || ext == ".jsx" ||
      ext == ".ts" || ext == ".tsx" || ext == ".java") {
    return Language::kJsdocFamily;
  }
  return std::nullopt;
}

void validate_utf8(std::string_view bytes) {
  auto const n = bytes.size();
  std::size_t i = 0;
  while (i < n) {
    auto const c = static_cast<unsigned char>(bytes[i]);
    std::size_t len = 0;
    std::uint32_t min = 0;
    if (c < 0x80) {
      ++i;
      continue;
    }
    if ((c & 0xE0) == 0xC0) {
      len = 2;
      min = 0x80;
    } else if ((c & 0xF0) == 0xE0) {
      len = 3;
      min = 0x800;
    } else if ((c & 0xF8) == 0xF0) {
      len = 4;
      min = 0x10000;
    } else {
      throw EncodingError("invalid UTF-8 lead byte at offset " +
                          std::to_string(i));
    }
    if (i + len > n) {
      throw EncodingError("truncated UTF-8 sequence at offset " +
                          std::to_string(i));
    }
    std::uint32_t cp = c & (0x7F >> len);
    for (std::size_t k = 1; k < len; ++k) {
      auto const cc = static_cast<unsigned char>(bytes[i + k]);
      if ((cc & 0xC0) != 0x80) {
        throw EncodingError("invalid UTF-8 continuation byte at offset " +
                            std::to_string(i + k));
      }
      cp = (cp << 6) | (cc & 0x3F);
    }
    if (cp < min || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) {
      throw EncodingError("invalid UTF-8 code point at offset " +
                          std::to_string(i));
    }
    i += len;
  }
}

SourceUnit::SourceUnit(std::string path, Language language, std::string content)
    : path_{std::move(path)}, language_{language}, content_{std::move(content)} {
  line_offsets_.push_back(0);
  std::size_t crlf = 0;
  std::size_t lf = 0;
  for (std::size_t i = 0; i < content_.size(); ++i) {
    if (content_[i] != '\n') continue;
    if (i > 0 && content_[i - 1] == '\r') {
      ++crlf;
    } else {
      ++lf;
    }
    if (i + 1 < content_.size()) line_offsets_.push_back(i + 1);
  }
  newline_flavor_ = crlf > lf ? NewlineFlavor::kCrlf : NewlineFlavor::kLf;
}

auto SourceUnit::line_of(std::size_t offset) const -> std::size_t {
  auto const it =
      std::upper_bound(line_offsets_.begin(), line_offsets_.end(), offset);
  return static_cast<std::size_t>(it - line_offsets_.begin());
}

auto ExistingDoc::closing_delimiter() const -> std::string {
  if (delimiter == "/**") return "*/";
  auto const quote_start = delimiter.find_first_of("\"'");
  return quote_start == std::string::npos ? std::string{}
                                          : delimiter.substr(quote_start);
}

auto ExistingDoc::encode() const -> std::string {
  return delimiter + raw_text + closing_delimiter();
}

auto CodeEntity::is_private() const -> bool {
  if (!name.starts_with('_')) return false;
  bool const dunder =
      name.size() > 4 && name.starts_with("__") && name.ends_with("__");
  return !dunder;
}

auto parse_source(std::string path, std::string content, Language language)
    -> ParsedSource {
  validate_utf8(content);
  SourceUnit unit{std::move(path), language, std::move(content)};
  std::vector<CodeEntity> entities;
  switch (language) {
    case Language::kPython:
      entities = detail::parse_python(unit);
      break;
    case Language::kJsdocFamily:
      entities = detail::parse_jsdoc(unit);
      break;
    default:
      throw UnsupportedLanguage("unsupported language");
  }
  std::stable_sort(entities.begin(), entities.end(),
                   [](CodeEntity const& a, CodeEntity const& b) {
                     return a.header_span.begin < b.header_span.begin;
                   });
  // Redefinitions (e.g. both arms of an if/else) share a qualified name;
  // later ones get an ordinal so ids stay unique within the file.
  std::map<std::string, int> seen;
  for (auto& e : entities) {
    auto const n = ++seen[e.id];
    if (n > 1) e.id += "#" + std::to_string(n);
  }
  return ParsedSource{std::move(unit), std::move(entities)};
}

auto parse_signature(std::string_view header_text, Language language)
    -> Signature {
  switch (language) {
    case Language::kPython:
      return detail::parse_python_signature(header_text);
    case Language::kJsdocFamily:
      return detail::parse_jsdoc_signature(header_text);
  }
  throw UnsupportedLanguage("unsupported language");
}

auto scan_raises(std::string_view body_text, Language language)
    -> std::vector<std::string> {
  return language == Language::kPython ? detail::python_raises(body_text)
                                       : detail::jsdoc_raises(body_text);
}

auto scan_returns(std::string_view body_text, Language language) -> bool {
  return language == Language::kPython ? detail::python_returns(body_text)
                                       : detail::jsdoc_returns(body_text);
}

}  // namespace autodoc
