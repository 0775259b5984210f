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

#ifndef SCRATCHLM_STREAM_FILE_H_
#define SCRATCHLM_STREAM_FILE_H_

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "scratchlm/tokenizer.h"
#include "scratchlm/vocabulary.h"

namespace scratchlm {

// Line-delimited token-stream file, version 1 (see docs/stream_format.md):
//
//   #scratchlm-streams 1 vocab=<16 hex digits> size=<vocabulary size>
//   <project id> TAB <sprite name> TAB <script flags> TAB <token ids>
//
// One record per sprite. Token ids are space separated with the
// BEGIN_SCRIPT/END_SCRIPT (and optional sprite) markers inline. The flags
// field has one character per script: 'R' event script, 'P' procedure
// definition, 'L' loose code. Tabs, newlines and backslashes in the text
// fields are backslash escaped.
inline constexpr int kStreamFormatVersion = 1;

struct StreamRecord {
  std::string project_id;
  std::string sprite;
  std::string script_flags;
  std::vector<TokenId> tokens;

  // Splits the record back into per-script streams (locations carry no
  // block ids).
  std::vector<ScriptStream> Scripts() const;
};

std::vector<StreamRecord> ToStreamRecords(const TokenizedProject& project);

std::string StreamHeader(const Vocabulary& vocabulary);
std::string FormatStreamRecord(const StreamRecord& record);

void WriteStreams(std::ostream& out, const std::vector<StreamRecord>& records,
                  const Vocabulary& vocabulary, bool with_header = true);

// Reads records one at a time. Throws Error(kFormatVersionMismatch) for an
// unknown version and Error(kMalformedStreamFile) for anything else that does
// not parse or does not match `vocabulary`.
class StreamFileReader {
 public:
  StreamFileReader(std::istream& in, const Vocabulary& vocabulary);

  std::optional<StreamRecord> Next();

 private:
  std::istream& in_;
  const Vocabulary& vocabulary_;
  int line_number_ = 1;
};

std::vector<StreamRecord> ReadStreamFile(const std::filesystem::path& path,
                                         const Vocabulary& vocabulary);

// A stream file, or every *.streams file in a directory (sorted by name).
std::vector<StreamRecord> ReadStreamInputs(const std::filesystem::path& path,
                                           const Vocabulary& vocabulary);

}  // namespace scratchlm

#endif  // SCRATCHLM_STREAM_FILE_H_
