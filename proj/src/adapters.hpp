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

#include <string>
#include <string_view>
#include <vector>

#include "autodoc/source_model.hpp"

// Language adapters behind parse_source and friends.
namespace autodoc::detail {

auto parse_python(SourceUnit const& unit) -> std::vector<CodeEntity>;
auto parse_python_signature(std::string_view header) -> Signature;
auto python_raises(std::string_view body) -> std::vector<std::string>;
auto python_returns(std::string_view body) -> bool;

auto parse_jsdoc(SourceUnit const& unit) -> std::vector<CodeEntity>;
auto parse_jsdoc_signature(std::string_view header) -> Signature;
auto jsdoc_raises(std::string_view body) -> std::vector<std::string>;
auto jsdoc_returns(std::string_view body) -> bool;

}  // namespace autodoc::detail
