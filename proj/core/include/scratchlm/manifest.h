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

#ifndef SCRATCHLM_MANIFEST_H_
#define SCRATCHLM_MANIFEST_H_

#include <filesystem>
#include <string>
#include <vector>

namespace scratchlm {

enum class Split { kNone, kTrain, kEval };

// One project of a corpus manifest.
//
// Manifest files are tab separated, one project per line, '#' comments:
//   <id> TAB <path to .sb3> TAB <remix: 0|1> [TAB <split: train|eval|->]
// Relative paths resolve against the manifest's directory.
struct ManifestEntry {
  std::string id;
  std::filesystem::path path;
  bool is_remix = false;
  Split split = Split::kNone;
};

std::vector<ManifestEntry> ReadManifest(const std::filesystem::path& path);
// Paths are written as given.
void WriteManifest(const std::filesystem::path& path,
                   const std::vector<ManifestEntry>& entries);

// Throws Error(kOverlappingPartitions) if any project id appears in both the
// train and eval partitions.
void CheckPartitions(const std::vector<ManifestEntry>& entries);

std::vector<ManifestEntry> SelectSplit(const std::vector<ManifestEntry>& entries,
                                       Split split);

}  // namespace scratchlm

#endif  // SCRATCHLM_MANIFEST_H_
