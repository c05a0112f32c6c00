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

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

// A scratch git repository driven through the git command line, standing
// in for the repository a forge would host.
namespace testing {

inline auto shell_quote(std::string const& s) -> std::string {
  std::string out = "'";
  for (char c : s) {
    if (c == '\'') {
      out += "'\\''";
    } else {
      out += c;
    }
  }
  return out + "'";
}

class GitRepo {
 public:
  explicit GitRepo(std::filesystem::path dir) : dir_{std::move(dir)} {
    std::filesystem::create_directories(dir_);
    git({"init", "-q", "-b", "master"});
    git({"config", "user.name", "Test Author"});
    git({"config", "user.email", "author@example.com"});
    git({"config", "core.autocrlf", "false"});
  }

  [[nodiscard]] auto path() const -> std::filesystem::path const& { return dir_; }

  // Runs git in the repository; `trim` drops trailing newlines of stdout.
  auto git(std::vector<std::string> const& args, bool check = true, bool trim = true) const
      -> std::string {
    std::string cmd =
        "GIT_AUTHOR_DATE='@1700000000 +0000' GIT_COMMITTER_DATE='@1700000000 +0000' git -C " +
        shell_quote(dir_.string());
    for (auto const& a : args) cmd += " " + shell_quote(a);
    cmd += " 2>/dev/null";
    FILE* pipe = ::popen(cmd.c_str(), "r");
    if (pipe == nullptr) throw std::runtime_error("popen failed");
    std::string out;
    std::array<char, 4096> buf{};
    std::size_t n = 0;
    while ((n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), n);
    auto const status = ::pclose(pipe);
    if (check && (!WIFEXITED(status) || WEXITSTATUS(status) != 0)) {
      throw std::runtime_error("git failed: " + cmd);
    }
    while (trim && !out.empty() && out.back() == '\n') out.pop_back();
    return out;
  }

  void write(std::string const& rel, std::string const& content) const {
    auto const p = dir_ / rel;
    std::filesystem::create_directories(p.parent_path());
    std::ofstream{p, std::ios::binary} << content;
  }

  // Commits the working tree on the current branch; returns the commit id.
  auto commit(std::string const& message) const -> std::string {
    git({"add", "-A"});
    git({"commit", "-q", "--allow-empty", "-m", message});
    return head();
  }

  [[nodiscard]] auto head() const -> std::string { return git({"rev-parse", "HEAD"}); }

  [[nodiscard]] auto rev(std::string const& name) const -> std::string {
    return git({"rev-parse", "--verify", "-q", name}, false);
  }

  [[nodiscard]] auto show(std::string const& commit, std::string const& rel) const
      -> std::string {
    return git({"show", commit + ":" + rel}, true, false);
  }

 private:
  std::filesystem::path dir_;
};

}  // namespace testing
