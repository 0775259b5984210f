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

#include "scratchlm/manifest.h"

#include <fstream>
#include <set>

#include <fmt/format.h>

#include "scratchlm/error.h"

namespace scratchlm {
namespace {

std::vector<std::string> SplitTabs(const std::string& line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (true) {
    std::size_t tab = line.find('\t', start);
    fields.push_back(line.substr(start, tab - start));
    if (tab == std::string::npos) break;
    start = tab + 1;
  }
  return fields;
}

}  // namespace

std::vector<ManifestEntry> ReadManifest(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw Error(ErrorCode::kIo, fmt::format("cannot open manifest '{}'", path.string()));
  }
  const std::filesystem::path base = path.parent_path();
  std::vector<ManifestEntry> entries;
  std::string line;
  int line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    auto fail = [&](std::string_view what) {
      return Error(ErrorCode::kMalformedManifest,
                   fmt::format("{}:{}: {}", path.string(), line_number, what));
    };
    auto fields = SplitTabs(line);
    if (fields.size() < 3 || fields.size() > 4) throw fail("expected 3 or 4 fields");
    ManifestEntry e;
    e.id = fields[0];
    if (e.id.empty()) throw fail("empty project id");
    e.path = fields[1];
    if (e.path.is_relative()) e.path = base / e.path;
    const std::string& remix = fields[2];
    if (remix == "1" || remix == "true") {
      e.is_remix = true;
    } else if (remix != "0" && remix != "false") {
      throw fail("remix flag must be 0 or 1");
    }
    if (fields.size() == 4) {
      const std::string& split = fields[3];
      if (split == "train") {
        e.split = Split::kTrain;
      } else if (split == "eval") {
        e.split = Split::kEval;
      } else if (split != "-" && !split.empty()) {
        throw fail("split must be train, eval or -");
      }
    }
    entries.push_back(std::move(e));
  }
  return entries;
}

void WriteManifest(const std::filesystem::path& path,
                   const std::vector<ManifestEntry>& entries) {
  std::ofstream out(path);
  if (!out) {
    throw Error(ErrorCode::kIo, fmt::format("cannot write '{}'", path.string()));
  }
  out << "# id\tpath\tremix\tsplit\n";
  for (const ManifestEntry& e : entries) {
    const char* split = e.split == Split::kTrain  ? "train"
                        : e.split == Split::kEval ? "eval"
                                                  : "-";
    out << e.id << '\t' << e.path.string() << '\t' << (e.is_remix ? 1 : 0) << '\t'
        << split << '\n';
  }
}

void CheckPartitions(const std::vector<ManifestEntry>& entries) {
  std::set<std::string> train;
  for (const ManifestEntry& e : entries) {
    if (e.split == Split::kTrain) train.insert(e.id);
  }
  for (const ManifestEntry& e : entries) {
    if (e.split == Split::kEval && train.contains(e.id)) {
      throw Error(ErrorCode::kOverlappingPartitions,
                  fmt::format("project '{}' is in both the train and eval partitions",
                              e.id));
    }
  }
}

std::vector<ManifestEntry> SelectSplit(const std::vector<ManifestEntry>& entries,
                                       Split split) {
  std::vector<ManifestEntry> out;
  for (const ManifestEntry& e : entries) {
    if (e.split == split) out.push_back(e);
  }
  return out;
}

}  // namespace scratchlm
