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

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace autodoc {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class EncodingError : public Error {
 public:
  using Error::Error;
};

class UnsupportedLanguage : public Error {
 public:
  using Error::Error;
};

// Fatal structural failure: the tokenizer cannot resynchronize.
class ParseError : public Error {
 public:
  ParseError(std::string const& message, std::size_t offset)
      : Error(message), offset_{offset} {}
  [[nodiscard]] auto offset() const noexcept -> std::size_t { return offset_; }

 private:
  std::size_t offset_;
};

class SignatureParseError : public Error {
 public:
  using Error::Error;
};

enum class Language { kPython, kJsdocFamily };
enum class NewlineFlavor { kLf, kCrlf };

[[nodiscard]] auto to_string(Language lang) -> std::string_view;
[[nodiscard]] auto language_from_string(std::string_view text)
    -> std::optional<Language>;

/// Half-open byte range [begin, end).
struct ByteRange {
  std::size_t begin{};
  std::size_t end{};

  [[nodiscard]] auto size() const noexcept -> std::size_t { return end - begin; }
  [[nodiscard]] auto contains(std::size_t offset) const noexcept -> bool {
    return offset >= begin && offset < end;
  }
  [[nodiscard]] auto overlaps(ByteRange const& other) const noexcept -> bool {
    return begin < other.end && other.begin < end;
  }
  auto operator==(ByteRange const&) const -> bool = default;
};

/// A parsed file. The content is fixed at construction; rewriting always
/// produces a new byte sequence.
class SourceUnit {
 public:
  SourceUnit(std::string path, Language language, std::string content);

  [[nodiscard]] auto path() const noexcept -> std::string const& { return path_; }
  [[nodiscard]] auto language() const noexcept -> Language { return language_; }
  [[nodiscard]] auto content() const noexcept -> std::string_view {
    return content_;
  }
  [[nodiscard]] auto newline_flavor() const noexcept -> NewlineFlavor {
    return newline_flavor_;
  }
  [[nodiscard]] auto newline() const noexcept -> std::string_view {
    return newline_flavor_ == NewlineFlavor::kCrlf ? "\r\n" : "\n";
  }
  [[nodiscard]] auto line_offsets() const noexcept
      -> std::vector<std::size_t> const& {
    return line_offsets_;
  }

  /// 1-based line number of a byte offset.
  [[nodiscard]] auto line_of(std::size_t offset) const -> std::size_t;
  [[nodiscard]] auto text(ByteRange range) const -> std::string_view {
    return std::string_view{content_}.substr(range.begin, range.size());
  }

 private:
  std::string path_;
  Language language_;
  std::string content_;
  NewlineFlavor newline_flavor_{NewlineFlavor::kLf};
  std::vector<std::size_t> line_offsets_;
};

enum class ParamKind { kPositional, kKeywordOnly, kVarPositional, kVarKeyword };

struct Param {
  std::string name;
  ParamKind kind{ParamKind::kPositional};
  std::optional<std::string> default_text;
  std::optional<std::string> annotation_text;

  auto operator==(Param const&) const -> bool = default;
};

struct Signature {
  std::vector<Param> params;
  std::optional<std::string> returns_annotation;
  bool is_method{false};

  auto operator==(Signature const&) const -> bool = default;
};

struct ExistingDoc {
  ByteRange span;        // the whole literal, delimiters included
  std::string raw_text;  // text between the delimiters
  std::string delimiter; // opening delimiter, prefix included (r""", /**)
  std::string indent;    // indentation used when rendering a replacement

  [[nodiscard]] auto closing_delimiter() const -> std::string;
  /// Rebuilds the literal from its parts; equals the bytes of `span`.
  [[nodiscard]] auto encode() const -> std::string;
};

struct InsertionPoint {
  std::size_t offset{};
  std::string indent;
  // False when a docstring cannot be added as whole lines at `offset`
  // (e.g. `def f(): pass`); such slots are reported but never patched.
  bool whole_line{true};
};

struct DocSlot {
  std::variant<ExistingDoc, InsertionPoint> value;

  [[nodiscard]] auto existing() const -> ExistingDoc const* {
    return std::get_if<ExistingDoc>(&value);
  }
  [[nodiscard]] auto insertion() const -> InsertionPoint const* {
    return std::get_if<InsertionPoint>(&value);
  }
};

enum class EntityKind { kModule, kClass, kFunction, kMethod };

[[nodiscard]] auto to_string(EntityKind kind) -> std::string_view;

struct CodeEntity {
  std::string id;  // path + ":" + qualified name
  EntityKind kind{EntityKind::kFunction};
  std::string name;
  std::string qualified_name;  // empty for the module entity
  ByteRange header_span;
  ByteRange body_span;
  std::string body_indent;
  Signature signature;
  DocSlot doc_slot;
  // Diagnostic produced when the header's parameter list could not be parsed.
  std::optional<std::string> signature_error;

  [[nodiscard]] auto display_name() const -> std::string const& {
    return qualified_name.empty() ? name : qualified_name;
  }
  [[nodiscard]] auto is_private() const -> bool;
};

struct ParsedSource {
  SourceUnit unit;
  std::vector<CodeEntity> entities;
};

/// Enumerates the documentable entities of a file in header order.
[[nodiscard]] auto parse_source(std::string path, std::string content,
                                Language language) -> ParsedSource;

[[nodiscard]] auto parse_signature(std::string_view header_text,
                                   Language language) -> Signature;

/// Exception names raised directly in `body_text`, in order of first
/// appearance. Nested function and class bodies are skipped.
[[nodiscard]] auto scan_raises(std::string_view body_text, Language language)
    -> std::vector<std::string>;

/// True iff the body returns a value outside nested entities.
[[nodiscard]] auto scan_returns(std::string_view body_text, Language language)
    -> bool;

/// Maps a file name to its language adapter, if any.
[[nodiscard]] auto language_for_path(std::string_view path)
    -> std::optional<Language>;

/// Validates UTF-8; throws EncodingError on the first invalid sequence.
void validate_utf8(std::string_view bytes);

}  // namespace autodoc
