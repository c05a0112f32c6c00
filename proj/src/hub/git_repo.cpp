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


#include <openssl/evp.h>

#include "autodoc/hub/repo.hpp"
#include "hub/process.hpp"

namespace autodoc::hub {

namespace fs = std::filesystem;
using detail::run_process;

auto sha256_hex(std::string_view data) -> std::string {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr);
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out += kHex[md[i] >> 4];
    out += kHex[md[i] & 0xF];
  }
  return out;
}

namespace {

using Env = std::vector<std::pair<std::string, std::string>>;

auto index_of(fs::path const& worktree) -> fs::path {
  auto index = worktree;
  index += ".index";
  return index;
}

auto trim_newline(std::string s) -> std::string {
  while (!s.empty() && (s.back() == '\n' || s.back() == '\r')) s.pop_back();
  return s;
}

auto split_nul(std::string const& s) -> std::vector<std::string> {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (pos < s.size()) {
    auto end = s.find('\0', pos);
    if (end == std::string::npos) end = s.size();
    if (end > pos) out.push_back(s.substr(pos, end - pos));
    pos = end + 1;
  }
  return out;
}

}  // namespace

GitCli::GitCli(fs::path mirrors_root, std::string git)
    : root_{std::move(mirrors_root)}, git_{std::move(git)} {}

namespace {

struct Git {
  std::string const& exe;
  fs::path const& mirror;

  auto run(std::vector<std::string> args, Env env = {},
           std::optional<fs::path> worktree = {}) const -> detail::ProcessResult {
    std::vector<std::string> argv{exe, "-c", "core.autocrlf=false", "-c", "core.safecrlf=false",
                                  "--git-dir=" + mirror.string()};
    if (worktree) argv.push_back("--work-tree=" + worktree->string());
    argv.insert(argv.end(), args.begin(), args.end());
    env.emplace_back("GIT_TERMINAL_PROMPT", "0");
    env.emplace_back("LC_ALL", "C");
    return run_process(argv, env);
  }

  auto check(std::vector<std::string> args, Env env = {},
             std::optional<fs::path> worktree = {}) const -> std::string {
    auto const what = args.empty() ? std::string{} : args.front();
    auto r = run(std::move(args), std::move(env), std::move(worktree));
    if (r.exit_code != 0) {
      throw RepoError("git " + what + " failed (" + std::to_string(r.exit_code) +
                      "): " + trim_newline(r.err));
    }
    return std::move(r.out);
  }
};

}  // namespace

auto GitCli::mirror_path(std::string const& repo_ref) const -> fs::path {
  return root_ / (sha256_hex(repo_ref).substr(0, 24) + ".git");
}

auto GitCli::lock_for(fs::path const& mirror) -> std::shared_ptr<std::mutex> {
  std::lock_guard lock{locks_mu_};
  auto& m = locks_[mirror.string()];
  if (!m) m = std::make_shared<std::mutex>();
  return m;
}

auto GitCli::mirror_fetch(std::string const& repo_ref) -> fs::path {
  auto const mirror = mirror_path(repo_ref);
  auto const mu = lock_for(mirror);
  std::lock_guard lock{*mu};
  std::error_code ec;
  fs::create_directories(root_, ec);
  if (!fs::exists(mirror / "HEAD")) {
    auto const r = run_process({git_, "init", "--quiet", "--bare", mirror.string()});
    if (r.exit_code != 0) throw RepoError("git init failed: " + trim_newline(r.err));
  }
  Git{git_, mirror}.check(
      {"fetch", "--quiet", "--prune", "--force", "--", repo_ref, "+refs/heads/*:refs/heads/*"});
  // Touch so cleanup can tell idle mirrors from active ones.
  fs::last_write_time(mirror, fs::file_time_type::clock::now(), ec);
  return mirror;
}

auto GitCli::resolve(fs::path const& mirror, std::string const& rev) -> std::optional<std::string> {
  auto const r = Git{git_, mirror}.run({"rev-parse", "--verify", "--quiet", rev + "^{commit}"});
  if (r.exit_code != 0) return std::nullopt;
  return trim_newline(r.out);
}

void GitCli::checkout_detached(fs::path const& mirror, std::string const& commit,
                               fs::path const& worktree) {
  std::error_code ec;
  fs::create_directories(worktree, ec);
  if (ec) throw RepoError("cannot create work tree " + worktree.string() + ": " + ec.message());
  Env const env{{"GIT_INDEX_FILE", index_of(worktree).string()}};
  Git const git{git_, mirror};
  git.check({"read-tree", commit}, env);
  git.check({"checkout-index", "--all", "--force"}, env, worktree);
}

auto GitCli::diff_names(fs::path const& mirror, std::optional<std::string> const& from,
                        std::string const& to) -> std::vector<std::string> {
  Git const git{git_, mirror};
  auto base = from;
  if (!base) {
    auto const parents = parents_of(mirror, to);
    if (!parents.empty()) base = parents.front();
  }
  if (!base) return split_nul(git.check({"ls-tree", "-r", "-z", "--name-only", to}));
  return split_nul(git.check({"diff", "--no-renames", "--name-only", "-z",
                              "--diff-filter=ACMRT", *base, to, "--"}));
}

auto GitCli::write_tree(fs::path const& mirror, fs::path const& worktree,
                        std::vector<std::string> const& paths) -> std::string {
  Env const env{{"GIT_INDEX_FILE", index_of(worktree).string()}};
  Git const git{git_, mirror};
  if (!paths.empty()) {
    std::vector<std::string> args{"update-index", "--"};
    args.insert(args.end(), paths.begin(), paths.end());
    git.check(args, env, worktree);
  }
  return trim_newline(git.check({"write-tree"}, env));
}

auto GitCli::tree_of(fs::path const& mirror, std::string const& commit) -> std::string {
  return trim_newline(Git{git_, mirror}.check({"rev-parse", commit + "^{tree}"}));
}

auto GitCli::commit_tree(fs::path const& mirror, std::string const& tree,
                         std::string const& parent, std::string const& message,
                         CommitIdentity const& identity) -> std::string {
  Env env{{"GIT_AUTHOR_NAME", identity.name},
          {"GIT_AUTHOR_EMAIL", identity.email},
          {"GIT_COMMITTER_NAME", identity.name},
          {"GIT_COMMITTER_EMAIL", identity.email}};
  if (identity.timestamp) {
    auto const date = "@" + std::to_string(*identity.timestamp) + " +0000";
    env.emplace_back("GIT_AUTHOR_DATE", date);
    env.emplace_back("GIT_COMMITTER_DATE", date);
  }
  return trim_newline(
      Git{git_, mirror}.check({"commit-tree", tree, "-p", parent, "-m", message}, env));
}

auto GitCli::parents_of(fs::path const& mirror, std::string const& commit)
    -> std::vector<std::string> {
  auto const out = Git{git_, mirror}.check({"rev-list", "--parents", "-n", "1", commit});
  std::vector<std::string> ids;
  std::size_t pos = 0;
  auto const line = trim_newline(out);
  while (pos < line.size()) {
    auto end = line.find(' ', pos);
    if (end == std::string::npos) end = line.size();
    ids.push_back(line.substr(pos, end - pos));
    pos = end + 1;
  }
  if (!ids.empty()) ids.erase(ids.begin());
  return ids;
}

void GitCli::update_branch(fs::path const& mirror, std::string const& repo_ref,
                           std::string const& branch, std::string const& commit) {
  auto const mu = lock_for(mirror);
  std::lock_guard lock{*mu};
  Git const git{git_, mirror};
  auto const ref = "refs/heads/" + branch;
  git.check({"push", "--quiet", "--force", "--", repo_ref, commit + ":" + ref});
  git.check({"update-ref", ref, commit});
}

void GitCli::remove_worktree(fs::path const& worktree) {
  std::error_code ec;
  fs::remove_all(worktree, ec);
  fs::remove(index_of(worktree), ec);
}

}  // namespace autodoc::hub
