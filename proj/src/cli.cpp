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


#include "autodoc/cli.hpp"

#include <csignal>
#include <pthread.h>

#include "CLI11.hpp"
#include "autodoc/engine.hpp"
#include "autodoc/hub/service.hpp"
#include "autodoc/report.hpp"
#include "json.hpp"

namespace autodoc {

namespace {

struct Options {
  std::vector<std::string> paths;
  std::string config_path;
  std::string format{"text"};
  std::string style;
  bool diff{false};
  bool write{false};
};

auto load(Options const& opts, std::ostream& err) -> std::optional<Config> {
  try {
    auto config = load_config(opts.config_path);
    if (!opts.style.empty()) config.target_style = *style_from_string(opts.style);
    return config;
  } catch (ConfigError const& e) {
    err << "autodoc: config error: " << e.what() << '\n';
    return std::nullopt;
  }
}

auto gather(Options const& opts, Config const& config, SummaryProvider& provider, RunMode mode)
    -> std::vector<FileResult> {
  auto const paths = opts.paths.empty() ? std::vector<std::string>{"."} : opts.paths;
  auto discovery = discover_files(paths, config);
  auto results = process_files(discovery.files, config, provider, mode);
  for (auto& e : discovery.errors) results.push_back(std::move(e));
  std::stable_sort(results.begin(), results.end(),
                   [](FileResult const& a, FileResult const& b) { return a.path < b.path; });
  return results;
}

auto cmd_check(Options const& opts, std::ostream& out, std::ostream& err) -> int {
  auto const config = load(opts, err);
  if (!config) return kExitError;
  SummaryProvider provider{config->summary};
  auto const results = gather(opts, *config, provider, RunMode::kCheck);
  Report report;
  std::size_t scanned = 0;
  for (auto const& r : results) {
    if (r.error) {
      report.items.push_back(ReportItem{r.path, std::nullopt, r.error});
      continue;
    }
    ++scanned;
    for (auto const& f : r.findings) report.items.push_back(ReportItem{r.path, f, std::nullopt});
  }
  out << (opts.format == "json" ? emit_json(report) : emit_text(report, scanned));
  if (report.error_count() > 0) return kExitError;
  return report.finding_count() > 0 ? kExitFindings : kExitClean;
}

auto cmd_fix(Options const& opts, std::ostream& out, std::ostream& err) -> int {
  if (opts.diff == opts.write) {
    err << "autodoc: fix needs exactly one of --diff or --write\n";
    return kExitError;
  }
  auto const config = load(opts, err);
  if (!config) return kExitError;
  SummaryProvider provider{config->summary};
  auto const results = gather(opts, *config, provider, RunMode::kFix);
  bool const json = opts.format == "json";
  std::size_t changed = 0;
  std::size_t errors = 0;
  for (auto const& r : results) {
    std::optional<std::string> error = r.error;
    bool written = false;
    if (!error && r.changed()) {
      ++changed;
      if (opts.write) {
        try {
          write_file_atomic(r.path, r.updated);
          written = true;
        } catch (Error const& e) {
          error = e.what();
        }
      } else if (!json) {
        out << render_diff(r.original, r.updated, r.path);
      }
    }
    if (error) {
      ++errors;
      if (json) {
        out << nlohmann::json{{"path", r.path}, {"error", *error}}.dump() << '\n';
      } else {
        err << r.path << ": error: " << *error << '\n';
      }
      continue;
    }
    if (!r.changed()) continue;
    if (json) {
      nlohmann::json j{{"path", r.path}, {"edits", r.edits.size()}, {"written", written}};
      if (opts.diff) j["diff"] = render_diff(r.original, r.updated, r.path);
      out << j.dump() << '\n';
    } else if (opts.write) {
      out << "rewrote " << r.path << " (" << r.edits.size() << " edit(s))\n";
    }
  }
  if (!json) {
    err << changed << " file(s) " << (opts.write ? "rewritten" : "would change") << ", "
        << errors << " error(s)\n";
  }
  if (errors > 0) return kExitError;
  return changed > 0 ? kExitFindings : kExitClean;
}

auto cmd_serve(Options const& opts, std::ostream& out, std::ostream& err) -> int {
  auto const config = load(opts, err);
  if (!config) return kExitError;

  sigset_t signals;
  sigemptyset(&signals);
  sigaddset(&signals, SIGINT);
  sigaddset(&signals, SIGTERM);
  sigset_t previous;
  // Blocked before any thread starts so only sigwait sees them.
  pthread_sigmask(SIG_BLOCK, &signals, &previous);
  int code = kExitClean;
  try {
    hub::HubService service{*config};
    service.start();
    out << "autodoc hub listening on " << config->hub.host << ":" << service.port() << std::endl;
    int sig = 0;
    sigwait(&signals, &sig);
    err << "autodoc: shutting down\n";
    service.stop();
  } catch (Error const& e) {
    err << "autodoc: serve failed: " << e.what() << '\n';
    code = kExitError;
  }
  pthread_sigmask(SIG_SETMASK, &previous, nullptr);
  return code;
}

}  // namespace

auto run_cli(std::vector<std::string> const& args, std::ostream& out, std::ostream& err) -> int {
  CLI::App app{"Docstring linter, fixer and push hook service", "autodoc"};
  app.require_subcommand(1);
  Options opts;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--config", opts.config_path, "Config file (default: $AUTODOC_CONFIG)");
  };
  auto add_scan = [&](CLI::App* cmd) {
    add_common(cmd);
    cmd->add_option("paths", opts.paths, "Files or directories (default: .)");
    cmd->add_option("--format", opts.format, "Report format")
        ->check(CLI::IsMember({"text", "json"}));
    cmd->add_option("--style", opts.style, "Target docstring style")
        ->check(CLI::IsMember({"rest", "google", "numpy"}));
  };

  auto* check = app.add_subcommand("check", "Report docstring findings");
  add_scan(check);
  auto* fix = app.add_subcommand("fix", "Add and repair docstrings");
  add_scan(fix);
  auto* diff = fix->add_flag("--diff", opts.diff, "Print unified diffs");
  auto* write = fix->add_flag("--write", opts.write, "Rewrite files in place");
  diff->excludes(write);
  auto* serve = app.add_subcommand("serve", "Run the push hook service");
  add_common(serve);

  std::vector<std::string> reversed{args.rbegin(), args.rend()};
  try {
    app.parse(reversed);
  } catch (CLI::CallForHelp const&) {
    out << app.help();
    return kExitClean;
  } catch (CLI::CallForAllHelp const&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitClean;
  } catch (CLI::ParseError const& e) {
    err << "autodoc: " << e.what() << '\n';
    return kExitError;
  }

  try {
    if (check->parsed()) return cmd_check(opts, out, err);
    if (fix->parsed()) return cmd_fix(opts, out, err);
    if (serve->parsed()) return cmd_serve(opts, out, err);
  } catch (std::exception const& e) {
    err << "autodoc: " << e.what() << '\n';
    return kExitError;
  }
  return kExitError;
}

}  // namespace autodoc
