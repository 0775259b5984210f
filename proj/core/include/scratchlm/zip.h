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

#ifndef SCRATCHLM_ZIP_H_
#define SCRATCHLM_ZIP_H_

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace scratchlm {

// Read-only view of a ZIP archive held in memory. Supports the stored and
// deflate methods, which covers every sb3 file the Scratch editor writes.
// Throws Error(kMalformedArchive) on anything it cannot read. The archive
// bytes must outlive the reader.
class ZipReader {
 public:
  explicit ZipReader(std::string_view archive);

  std::vector<std::string> EntryNames() const;
  bool Contains(std::string_view name) const;
  // Decompressed content; checks the stored CRC-32.
  std::string Read(std::string_view name) const;

 private:
  struct Entry {
    std::string name;
    unsigned method;
    std::uint32_t crc;
    std::size_t compressed_size;
    std::size_t size;
    std::size_t local_header_offset;
  };

  const Entry* FindEntry(std::string_view name) const;

  std::string_view archive_;
  std::vector<Entry> entries_;
};

// Serializes (name, content) pairs into a ZIP archive with stored entries.
std::string WriteZip(const std::vector<std::pair<std::string, std::string>>& entries);

}  // namespace scratchlm

#endif  // SCRATCHLM_ZIP_H_
