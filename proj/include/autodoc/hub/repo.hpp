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

#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "autodoc/hub/types.hpp"

namespace autodoc::hub {

class RepoError : public HubError {
 public:
  using HubError::HubError;
};

struct CommitIdentity {
  std::string name{"autodoc-bot"};
  std::string email{"autodoc-bot@localhost"};
  std::optional<std::int64_t> timestamp;  // epoch seconds; wall clock when absent
};

/// Repository verbs a job needs. The git implementation shells out to the
/// system client; tests may substitute their own.
class RepoCommands {
 public:
  virtual ~RepoCommands() = default;

  /// Creates or refreshes the local mirror of `repo_ref`; returns its path.
  virtual auto mirror_fetch(std::string const& repo_ref) -> std::filesystem::path = 0;

  /// Full revision id of `rev` in the mirror, or nothing.
  virtual auto resolve(std::filesystem::path const& mirror, std::string const& rev)
      -> std::optional<std::string> = 0;

  /// Materializes `commit` into `worktree` with a private index.
  virtual void checkout_detached(std::filesystem::path const& mirror, std::string const& commit,
                                 std::filesystem::path const& worktree) = 0;

  /// Paths changed between `from` and `to`; every path of `to` when `from`
  /// is absent and `to` has no parent.
  virtual auto diff_names(std::filesystem::path const& mirror,
                          std::optional<std::string> const& from, std::string const& to)
      -> std::vector<std::string> = 0;

  /// Stages `paths` from the work tree and writes the tree object.
  virtual auto write_tree(std::filesystem::path const& mirror,
                          std::filesystem::path const& worktree,
                          std::vector<std::string> const& paths) -> std::string = 0;

  virtual auto tree_of(std::filesystem::path const& mirror, std::string const& commit)
      -> std::string = 0;

  virtual auto commit_tree(std::filesystem::path const& mirror, std::string const& tree,
                           std::string const& parent, std::string const& message,
                           CommitIdentity const& identity) -> std::string = 0;

  virtual auto parents_of(std::filesystem::path const& mirror, std::string const& commit)
      -> std::vector<std::string> = 0;

  /// Points `branch` of `repo_ref` (and of the mirror) at `commit`,
  /// replacing whatever it pointed at.
  virtual void update_branch(std::filesystem::path const& mirror, std::string const& repo_ref,
                             std::string const& branch, std::string const& commit) = 0;

  /// Removes a work tree and its private index.
  virtual void remove_worktree(std::filesystem::path const& worktree) = 0;
};

/// RepoCommands over the git command-line client.
class GitCli : public RepoCommands {
 public:
  explicit GitCli(std::filesystem::path mirrors_root, std::string git = "git");

  auto mirror_fetch(std::string const& repo_ref) -> std::filesystem::path override;
  auto resolve(std::filesystem::path const& mirror, std::string const& rev)
      -> std::optional<std::string> override;
  void checkout_detached(std::filesystem::path const& mirror, std::string const& commit,
                         std::filesystem::path const& worktree) override;
  auto diff_names(std::filesystem::path const& mirror, std::optional<std::string> const& from,
                  std::string const& to) -> std::vector<std::string> override;
  auto write_tree(std::filesystem::path const& mirror, std::filesystem::path const& worktree,
                  std::vector<std::string> const& paths) -> std::string override;
  auto tree_of(std::filesystem::path const& mirror, std::string const& commit)
      -> std::string override;
  auto commit_tree(std::filesystem::path const& mirror, std::string const& tree,
                   std::string const& parent, std::string const& message,
                   CommitIdentity const& identity) -> std::string override;
  auto parents_of(std::filesystem::path const& mirror, std::string const& commit)
      -> std::vector<std::string> override;
  void update_branch(std::filesystem::path const& mirror, std::string const& repo_ref,
                     std::string const& branch, std::string const& commit) override;
  void remove_worktree(std::filesystem::path const& worktree) override;

  [[nodiscard]] auto mirror_path(std::string const& repo_ref) const -> std::filesystem::path;

 private:
  auto lock_for(std::filesystem::path const& mirror) -> std::shared_ptr<std::mutex>;

  std::filesystem::path root_;
  std::string git_;
  std::mutex locks_mu_;
  std::map<std::string, std::shared_ptr<std::mutex>> locks_;
};

/// Lowercase hex SHA-256 of `data`.
[[nodiscard]] auto sha256_hex(std::string_view data) -> std::string;

}  // namespace autodoc::hub
