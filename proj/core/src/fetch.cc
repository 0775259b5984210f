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

#include "scratchlm/fetch.h"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <set>
#include <thread>

#include <fmt/format.h>
#include <httplib.h>
#include <nlohmann/json.hpp>

#include "scratchlm/error.h"
#include "scratchlm/zip.h"

namespace scratchlm {
namespace {

struct Url {
  std::string origin;  // scheme://host[:port]
  std::string path;    // without trailing slash
};

Url SplitUrl(const std::string& base) {
  const auto scheme = base.find("://");
  if (scheme == std::string::npos) {
    throw Error(ErrorCode::kInvalidArgument, fmt::format("bad endpoint URL '{}'", base));
  }
  const auto slash = base.find('/', scheme + 3);
  Url url;
  url.origin = base.substr(0, slash);
  url.path = slash == std::string::npos ? "" : base.substr(slash);
  while (!url.path.empty() && url.path.back() == '/') url.path.pop_back();
  return url;
}

bool IsNumeric(const std::string& id) {
  return !id.empty() && std::all_of(id.begin(), id.end(), [](char c) {
    return c >= '0' && c <= '9';
  });
}

}  // namespace

FetchOptions FetchOptionsFromEnvironment() {
  FetchOptions options;
  if (const char* api = std::getenv("SCRATCHLM_API_BASE"); api && *api) {
    options.api_base = api;
  }
  if (const char* projects = std::getenv("SCRATCHLM_PROJECTS_BASE"); projects && *projects) {
    options.projects_base = projects;
  }
  return options;
}

ProjectFetcher::ProjectFetcher(FetchOptions options) : options_(std::move(options)) {}

std::string ProjectFetcher::Get(const std::string& base, const std::string& path) {
  const Url url = SplitUrl(base);
  httplib::Client client(url.origin);
  client.set_follow_location(true);
  client.set_connection_timeout(options_.timeout);
  client.set_read_timeout(options_.timeout);

  auto backoff = options_.backoff;
  for (int attempt = 0;; ++attempt) {
    const auto wait = last_request_ + options_.min_interval - std::chrono::steady_clock::now();
    if (wait.count() > 0) std::this_thread::sleep_for(wait);
    last_request_ = std::chrono::steady_clock::now();

    const httplib::Result res = client.Get(url.path + path);
    if (!res) {
      throw Error(ErrorCode::kNetworkError,
                  fmt::format("GET {}{}: {}", base, path, httplib::to_string(res.error())));
    }
    if (res->status == 200) return res->body;
    if (res->status == 404) {
      throw Error(ErrorCode::kNotFound, fmt::format("GET {}{}: not found", base, path));
    }
    if (res->status == 429) {
      if (attempt >= options_.max_retries) {
        throw Error(ErrorCode::kRateLimited,
                    fmt::format("GET {}{}: still rate limited after {} retries", base,
                                path, options_.max_retries));
      }
      std::this_thread::sleep_for(backoff);
      backoff *= 2;
      continue;
    }
    throw Error(ErrorCode::kNetworkError,
                fmt::format("GET {}{}: HTTP {}", base, path, res->status));
  }
}

FetchedProject ProjectFetcher::Fetch(const std::string& id) {
  if (!IsNumeric(id)) {
    throw Error(ErrorCode::kInvalidArgument, fmt::format("project id '{}' is not numeric", id));
  }
  nlohmann::json meta;
  try {
    meta = nlohmann::json::parse(Get(options_.api_base, "/projects/" + id));
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kNetworkError,
                fmt::format("project {}: unreadable metadata: {}", id, e.what()));
  }
  FetchedProject project;
  project.id = id;
  if (auto remix = meta.find("remix"); remix != meta.end() && remix->is_object()) {
    auto parent = remix->find("parent");
    project.is_remix = parent != remix->end() && !parent->is_null();
  }
  std::string path = "/" + id;
  if (auto token = meta.find("project_token"); token != meta.end() && token->is_string()) {
    path += "?token=" + token->get<std::string>();
  }
  std::string body = Get(options_.projects_base, path);
  // Some projects are served as complete archives.
  project.archive = body.starts_with("PK") ? std::move(body)
                                          : WriteZip({{"project.json", std::move(body)}});
  return project;
}

std::vector<ManifestEntry> ProjectFetcher::FetchAll(
    const std::vector<std::string>& ids, const std::filesystem::path& directory,
    const std::function<void(const std::string&, const std::exception&)>& on_error) {
  std::filesystem::create_directories(directory);
  const auto manifest_path = directory / "manifest.tsv";
  std::vector<ManifestEntry> manifest;
  if (std::filesystem::exists(manifest_path)) manifest = ReadManifest(manifest_path);
  std::set<std::string> done;
  for (const ManifestEntry& e : manifest) {
    if (std::filesystem::exists(e.path)) done.insert(e.id);
  }
  for (const std::string& id : ids) {
    if (done.contains(id)) continue;
    try {
      const FetchedProject p = Fetch(id);
      const auto file = directory / (id + ".sb3");
      {
        std::ofstream out(file, std::ios::binary);
        out.write(p.archive.data(), static_cast<std::streamsize>(p.archive.size()));
        if (!out) throw Error(ErrorCode::kIo, fmt::format("cannot write '{}'", file.string()));
      }
      manifest.push_back({id, file, p.is_remix, Split::kNone});
      std::vector<ManifestEntry> relative = manifest;
      for (ManifestEntry& e : relative) e.path = std::filesystem::proximate(e.path, directory);
      WriteManifest(manifest_path, relative);
      done.insert(id);
    } catch (const Error& e) {
      if (!on_error) throw;
      on_error(id, e);
    }
  }
  return manifest;
}

}  // namespace scratchlm
