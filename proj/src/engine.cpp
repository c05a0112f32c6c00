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


#include "autodoc/engine.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <thread>

#include <unistd.h>

namespace autodoc {

namespace fs = std::filesystem;

auto process_source(std::string path, std::string content, Language language,
                    Config const& config, SummaryProvider& provider, RunMode mode)
    -> FileResult {
  FileResult result;
  result.path = path;
  result.language = language;
  result.original = content;
  result.updated = content;
  try {
    auto const parsed = parse_source(std::move(path), std::move(content), language);
    result.findings = analyze_unit(parsed, config);
    if (mode == RunMode::kCheck) return result;

    std::map<std::string, std::vector<Finding>> fixable;
    for (auto const& f : result.findings) {
      if (f.fix) fixable[f.entity_id].push_back(f);
    }
    if (fixable.empty()) return result;

    auto const& unit = parsed.unit;
    for (auto const& entity : effective_entities(parsed, config)) {
      auto const it = fixable.find(entity.id);
      if (it == fixable.end()) continue;
      auto const facts = gather_facts(unit, entity);
      EntityContext const ctx{unit, entity, facts};
      bool const create = std::any_of(it->second.begin(), it->second.end(), [](Finding const& f) {
        return f.fix->kind == FixKind::kCreateDocstring;
      });
      if (create) {
        result.outcomes.push_back(synthesize_docstring(ctx, provider, config));
      } else if (auto ast = doc_ast_for(unit, entity)) {
        result.outcomes.push_back(apply_fixes(*ast, it->second, ctx, provider, config));
      }
    }
    result.edits = plan_edits(parsed, result.outcomes, config);
    result.updated = apply_edits(unit.content(), result.edits);
  } catch (ParseError const& e) {
    result.error = std::string{"parse error: "} + e.what();
  } catch (Error const& e) {
    result.error = e.what();
  }
  return result;
}

auto read_file(fs::path const& path) -> std::string {
  std::ifstream in{path, std::ios::binary};
  if (!in) throw Error("cannot read file");
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw Error("cannot read file");
  return buf.str();
}

void write_file_atomic(fs::path const& path, std::string const& content) {
  auto tmp = path;
  tmp += ".autodoc-tmp-" + std::to_string(::getpid());
  {
    std::ofstream out{tmp, std::ios::binary | std::ios::trunc};
    if (!out) throw Error("cannot create temporary file for " + path.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) {
      std::error_code ignored;
      fs::remove(tmp, ignored);
      throw Error("cannot write " + path.string());
    }
  }
  std::error_code ec;
  fs::permissions(tmp, fs::status(path).permissions(), ec);
  fs::rename(tmp, path, ec);
  if (ec) {
    std::error_code ignored;
    fs::remove(tmp, ignored);
    throw Error("cannot replace " + path.string() + ": " + ec.message());
  }
}

namespace {

auto wanted(fs::path const& path, Config const& config) -> bool {
  auto const lang = language_for_path(path.string());
  return lang && config.handles(*lang);
}

auto excluded(fs::path const& dir, Config const& config) -> bool {
  auto const name = dir.filename().string();
  return std::find(config.exclude.begin(), config.exclude.end(), name) != config.exclude.end();
}

auto error_result(std::string path, std::string message) -> FileResult {
  FileResult r;
  r.path = std::move(path);
  r.error = std::move(message);
  return r;
}

}  // namespace

auto discover_files(std::vector<std::string> const& paths, Config const& config) -> Discovery {
  Discovery out;
  std::set<fs::path> files;
  for (auto const& arg : paths) {
    fs::path const root{arg};
    std::error_code ec;
    auto const status = fs::status(root, ec);
    if (ec || !fs::exists(status)) {
      out.errors.push_back(error_result(arg, "no such file or directory"));
      continue;
    }
    if (!fs::is_directory(status)) {
      if (wanted(root, config)) files.insert(root.lexically_normal());
      continue;
    }
    fs::recursive_directory_iterator it{root, fs::directory_options::none, ec};
    if (ec) {
      out.errors.push_back(error_result(arg, "cannot list directory: " + ec.message()));
      continue;
    }
    for (auto end = fs::recursive_directory_iterator{}; it != end; it.increment(ec)) {
      if (ec) {
        out.errors.push_back(error_result(arg, "cannot list directory: " + ec.message()));
        break;
      }
      auto const& entry = *it;
      std::error_code type_ec;
      if (entry.is_directory(type_ec)) {
        if (excluded(entry.path(), config)) it.disable_recursion_pending();
        continue;
      }
      if (entry.is_regular_file(type_ec) && wanted(entry.path(), config)) {
        files.insert(entry.path().lexically_normal());
      }
    }
  }
  out.files.assign(files.begin(), files.end());
  return out;
}

auto process_files(std::vector<fs::path> const& files, Config const& config,
                   SummaryProvider& provider, RunMode mode) -> std::vector<FileResult> {
  std::vector<FileResult> results(files.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (auto i = next++; i < files.size(); i = next++) {
      auto const& path = files[i];
      auto const display = path.generic_string();
      auto const lang = language_for_path(display);
      try {
        results[i] = process_source(display, read_file(path), *lang, config, provider, mode);
      } catch (Error const& e) {
        results[i] = error_result(display, e.what());
      }
    }
  };
  auto jobs = config.jobs > 0 ? static_cast<std::size_t>(config.jobs)
                              : std::max(1U, std::thread::hardware_concurrency());
  jobs = std::min(jobs, std::max<std::size_t>(files.size(), 1));
  {
    std::vector<std::jthread> pool;
    for (std::size_t t = 1; t < jobs; ++t) pool.emplace_back(work);
    work();
  }
  std::stable_sort(results.begin(), results.end(),
                   [](FileResult const& a, FileResult const& b) { return a.path < b.path; });
  return results;
}

}  // namespace autodoc
