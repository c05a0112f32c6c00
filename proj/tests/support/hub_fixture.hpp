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

#include <atomic>
#include <memory>
#include <string>

#include "autodoc/hub/service.hpp"
#include "autodoc/hub/types.hpp"
#include "support/git_fixture.hpp"
#include "support/masking.hpp"
#include "support/temp_dir.hpp"

// Shared pieces for driving a HubService against scratch repositories.
namespace testing {

inline constexpr char const* kSecret = "test-secret";

struct ManualClock {
  std::shared_ptr<std::atomic<std::int64_t>> now =
      std::make_shared<std::atomic<std::int64_t>>(1'700'000'000'000);
  [[nodiscard]] auto clock() const -> autodoc::hub::Clock {
    return [n = now] { return n->load(); };
  }
  void advance(std::int64_t ms) const { *now += ms; }
};

inline auto hub_config(std::filesystem::path const& storage) -> autodoc::Config {
  autodoc::Config config;
  config.hub.secret = kSecret;
  config.hub.storage_path = storage.string();
  config.hub.port = 0;
  config.hub.fixed_timestamps = 1'700'000'100;
  config.hub.visibility_timeout_ms = 1000;
  config.jobs = 2;
  return config;
}

inline auto push_body(GitRepo const& repo, std::string const& branch, std::string const& commit,
                      std::string const& delivery,
                      std::optional<std::string> before = std::nullopt) -> std::string {
  autodoc::hub::HookEvent e{repo.path().string(), branch, commit, delivery, std::move(before)};
  return autodoc::hub::hook_event_to_json(e);
}

inline auto deliver(autodoc::hub::HubService& service, std::string const& body)
    -> autodoc::hub::HookReply {
  return service.receive_hook(body, autodoc::hub::sign_body(kSecret, body));
}

// Files a pushed commit typically carries: one documented python module,
// undocumented python and TypeScript code with tricky literals nearby.
inline void seed_sources(GitRepo const& repo) {
  repo.write("pkg/documented.py",
             "\"\"\"Documented module.\"\"\"\n\n\n"
             "def add(a, b):\n"
             "    \"\"\"Add numbers.\n\n    :param a: First.\n    :param b: Second.\n"
             "    :returns: Sum.\n    \"\"\"\n"
             "    return a + b\n");
  repo.write("pkg/users.py",
             "# users\nimport os\n\n\n"
             "def get_user_name(user_id):\n"
             "    note = \"\"\"not a docstring\"\"\"\n"
             "    return os.environ.get(user_id, note)  # keep   spacing\n\n\n"
             "class Store:\n"
             "    def is_valid(self, key):\n"
             "        if not key:\n"
             "            raise ValueError('empty')\n"
             "        return True\n");
  repo.write("web/fetch.ts",
             "export function fetchHTTPResponse(url: string): string {\n"
             "  const s = \"/** not a doc */\";\n"
             "  return url + s;\n"
             "}\n");
  repo.write("README.md", "# sample\n");
}

// Whether the changes between two versions of a file stay inside doc slots.
inline auto only_doc_slots_changed(std::string const& path, std::string const& before,
                                   std::string const& after) -> bool {
  auto const lang = autodoc::language_for_path(path);
  if (!lang) return before == after;
  auto const a = autodoc::parse_source(path, before, *lang);
  auto const b = autodoc::parse_source(path, after, *lang);
  return oracle::mask_doc_slots(a) == oracle::mask_doc_slots(b);
}

}  // namespace testing
