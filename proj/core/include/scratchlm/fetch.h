// Copyright 2026 The ScratchLM Authors.
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

#ifndef SCRATCHLM_FETCH_H_
#define SCRATCHLM_FETCH_H_

#include <chrono>
#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include "scratchlm/manifest.h"

namespace scratchlm {

inline constexpr std::string_view kDefaultApiBase = "https://api.scratch.mit.edu";
inline constexpr std::string_view kDefaultProjectsBase = "https://projects.scratch.mit.edu";

struct FetchOptions {
  // Project metadata (GET {api_base}/projects/{id}).
  std::string api_base = std::string(kDefaultApiBase);
  // Project content (GET {projects_base}/{id}?token=...).
  std::string projects_base = std::string(kDefaultProjectsBase);
  // Retries after HTTP 429 before giving up with kRateLimited.
  int max_retries = 3;
  // First retry delay; doubles on every further retry.
  std::chrono::milliseconds backoff{2000};
  // Minimum spacing between consecutive requests.
  std::chrono::milliseconds min_interval{500};
  std::chrono::seconds timeout{30};
};

// Defaults overridden by SCRATCHLM_API_BASE and SCRATCHLM_PROJECTS_BASE.
FetchOptions FetchOptionsFromEnvironment();

struct FetchedProject {
  std::string id;
  // An sb3 archive with project.json (assets are not downloaded).
  std::string archive;
  bool is_remix = false;
};

// Downloads single projects through the public Scratch REST API. Requests
// are serialized and spaced by min_interval.
class ProjectFetcher {
 public:
  explicit ProjectFetcher(FetchOptions options = FetchOptionsFromEnvironment());

  // Throws Error(kInvalidArgument) for non-numeric ids, kNotFound,
  // kRateLimited or kNetworkError.
  FetchedProject Fetch(const std::string& id);

  // Fetches every id into `directory` as <id>.sb3 and records it in
  // <directory>/manifest.tsv. Ids already in the manifest are skipped, so an
  // interrupted run can be resumed. Per-project failures are passed to
  // `on_error` (if set) and do not stop the run. Returns the full manifest.
  std::vector<ManifestEntry> FetchAll(
      const std::vector<std::string>& ids, const std::filesystem::path& directory,
      const std::function<void(const std::string& id, const std::exception&)>& on_error = {});

 private:
  std::string Get(const std::string& base, const std::string& path);

  FetchOptions options_;
  std::chrono::steady_clock::time_point last_request_{};
};

}  // namespace scratchlm

#endif  // SCRATCHLM_FETCH_H_
