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


#include "hub/jsonl.hpp"

#include <fcntl.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>
#include <fstream>
#include <sstream>

#include "autodoc/hub/types.hpp"

namespace autodoc::hub::detail {

namespace fs = std::filesystem;

namespace {

[[noreturn]] void io_error(std::string const& what, fs::path const& path) {
  throw HubError(what + " " + path.string() + ": " + std::strerror(errno));
}

void write_all(int fd, std::string_view data, fs::path const& path) {
  while (!data.empty()) {
    auto const n = ::write(fd, data.data(), data.size());
    if (n < 0) {
      if (errno == EINTR) continue;
      io_error("cannot write", path);
    }
    data.remove_prefix(static_cast<std::size_t>(n));
  }
}

}  // namespace

JsonlFile::JsonlFile(fs::path path, bool sync) : path_{std::move(path)}, sync_{sync} {
  std::error_code ec;
  if (path_.has_parent_path()) fs::create_directories(path_.parent_path(), ec);
  if (ec) throw HubError("cannot create " + path_.parent_path().string() + ": " + ec.message());
  std::string content;
  if (fs::exists(path_)) {
    std::ifstream in{path_, std::ios::binary};
    if (!in) io_error("cannot read", path_);
    std::ostringstream buf;
    buf << in.rdbuf();
    content = buf.str();
  }
  auto const complete = content.rfind('\n') == std::string::npos ? 0 : content.rfind('\n') + 1;
  if (complete != content.size()) {
    fs::resize_file(path_, complete, ec);
    if (ec) throw HubError("cannot truncate torn line in " + path_.string());
  }
  std::size_t pos = 0;
  while (pos < complete) {
    auto const nl = content.find('\n', pos);
    if (nl > pos) initial_.emplace_back(content.substr(pos, nl - pos));
    pos = nl + 1;
  }
  open_for_append();
}

JsonlFile::~JsonlFile() {
  if (fd_ >= 0) ::close(fd_);
}

void JsonlFile::open_for_append() {
  fd_ = ::open(path_.c_str(), O_WRONLY | O_CREAT | O_APPEND | O_CLOEXEC, 0644);
  if (fd_ < 0) io_error("cannot open", path_);
}

void JsonlFile::append(std::string_view line) {
  std::string buf{line};
  buf += '\n';
  std::lock_guard lock{mu_};
  write_all(fd_, buf, path_);
  if (sync_ && ::fdatasync(fd_) != 0) io_error("cannot sync", path_);
}

void JsonlFile::rewrite(std::vector<std::string> const& lines) {
  std::lock_guard lock{mu_};
  auto tmp = path_;
  tmp += ".tmp";
  auto const fd = ::open(tmp.c_str(), O_WRONLY | O_CREAT | O_TRUNC | O_CLOEXEC, 0644);
  if (fd < 0) io_error("cannot open", tmp);
  std::string buf;
  for (auto const& l : lines) {
    buf += l;
    buf += '\n';
  }
  write_all(fd, buf, tmp);
  if (sync_) ::fdatasync(fd);
  ::close(fd);
  if (::rename(tmp.c_str(), path_.c_str()) != 0) io_error("cannot replace", path_);
  ::close(fd_);
  open_for_append();
}

}  // namespace autodoc::hub::detail
