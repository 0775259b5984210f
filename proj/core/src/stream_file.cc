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

#include "scratchlm/stream_file.h"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include <fmt/format.h>

#include "scratchlm/error.h"

namespace scratchlm {
namespace {

constexpr std::string_view kMagic = "#scratchlm-streams";

std::string Escape(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '\\': out += "\\\\"; break;
      case '\t': out += "\\t"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      default: out += c;
    }
  }
  return out;
}

std::optional<std::string> Unescape(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] != '\\') {
      out += s[i];
      continue;
    }
    if (++i == s.size()) return std::nullopt;
    switch (s[i]) {
      case '\\': out += '\\'; break;
      case 't': out += '\t'; break;
      case 'n': out += '\n'; break;
      case 'r': out += '\r'; break;
      default: return std::nullopt;
    }
  }
  return out;
}

char FlagFor(const ScriptStream& s) {
  if (s.procedure) return 'P';
  return s.reachable ? 'R' : 'L';
}

}  // namespace

std::vector<ScriptStream> StreamRecord::Scripts() const {
  std::vector<ScriptStream> scripts;
  std::optional<ScriptStream> open;
  for (TokenId id : tokens) {
    if (id == kBeginScript) {
      if (open) {
        throw Error(ErrorCode::kMalformedStreamFile,
                    fmt::format("sprite '{}' of project '{}' has a nested BEGIN_SCRIPT",
                                sprite, project_id));
      }
      open.emplace();
      open->project_id = project_id;
      open->sprite = sprite;
      open->script_index = static_cast<int>(scripts.size());
    }
    if (!open) continue;  // sprite markers between scripts
    open->tokens.push_back(id);
    open->block_ids.emplace_back();
    if (id == kEndScript) {
      const std::size_t i = scripts.size();
      const char flag = i < script_flags.size() ? script_flags[i] : 'R';
      open->reachable = flag != 'L';
      open->procedure = flag == 'P';
      scripts.push_back(std::move(*open));
      open.reset();
    }
  }
  if (open) {
    throw Error(ErrorCode::kMalformedStreamFile,
                fmt::format("sprite '{}' of project '{}' has an unterminated script",
                            sprite, project_id));
  }
  return scripts;
}

std::vector<StreamRecord> ToStreamRecords(const TokenizedProject& project) {
  std::vector<StreamRecord> records;
  for (const SpriteStreams& sprite : project.sprites) {
    StreamRecord r;
    r.project_id = project.meta.id;
    r.sprite = sprite.name;
    for (const ScriptStream& s : sprite.scripts) r.script_flags += FlagFor(s);
    r.tokens = SpriteSequence(sprite, project.sprite_markers);
    records.push_back(std::move(r));
  }
  return records;
}

std::string StreamHeader(const Vocabulary& vocabulary) {
  return fmt::format("{} {} vocab={:016x} size={}", kMagic, kStreamFormatVersion,
                     vocabulary.fingerprint(), vocabulary.size());
}

std::string FormatStreamRecord(const StreamRecord& record) {
  std::string line = Escape(record.project_id);
  line += '\t';
  line += Escape(record.sprite);
  line += '\t';
  line += record.script_flags;
  line += '\t';
  for (std::size_t i = 0; i < record.tokens.size(); ++i) {
    if (i) line += ' ';
    line += std::to_string(record.tokens[i]);
  }
  return line;
}

void WriteStreams(std::ostream& out, const std::vector<StreamRecord>& records,
                  const Vocabulary& vocabulary, bool with_header) {
  if (with_header) out << StreamHeader(vocabulary) << '\n';
  for (const StreamRecord& r : records) out << FormatStreamRecord(r) << '\n';
}

StreamFileReader::StreamFileReader(std::istream& in, const Vocabulary& vocabulary)
    : in_(in), vocabulary_(vocabulary) {
  std::string header;
  if (!std::getline(in_, header) || !header.starts_with(kMagic)) {
    throw Error(ErrorCode::kMalformedStreamFile, "missing token-stream header");
  }
  std::istringstream fields(header.substr(kMagic.size()));
  int version = 0;
  std::string vocab_field;
  std::string size_field;
  fields >> version >> vocab_field >> size_field;
  if (version != kStreamFormatVersion) {
    throw Error(ErrorCode::kFormatVersionMismatch,
                fmt::format("token-stream version {} (this build reads {})",
                            version, kStreamFormatVersion));
  }
  const std::string expected_vocab =
      fmt::format("vocab={:016x}", vocabulary_.fingerprint());
  const std::string expected_size = fmt::format("size={}", vocabulary_.size());
  if (vocab_field != expected_vocab || size_field != expected_size) {
    throw Error(ErrorCode::kMalformedStreamFile,
                fmt::format("token-stream file was written with a different "
                            "block table ({} {})",
                            vocab_field, size_field));
  }
}

std::optional<StreamRecord> StreamFileReader::Next() {
  std::string line;
  while (std::getline(in_, line)) {
    ++line_number_;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;

    auto fail = [&](std::string_view what) {
      return Error(ErrorCode::kMalformedStreamFile,
                   fmt::format("token-stream line {}: {}", line_number_, what));
    };
    std::vector<std::string_view> fields;
    std::string_view rest = line;
    for (int i = 0; i < 3; ++i) {
      auto tab = rest.find('\t');
      if (tab == std::string_view::npos) throw fail("expected 4 tab-separated fields");
      fields.push_back(rest.substr(0, tab));
      rest.remove_prefix(tab + 1);
    }
    if (rest.find('\t') != std::string_view::npos) throw fail("too many fields");

    StreamRecord record;
    auto id = Unescape(fields[0]);
    auto sprite = Unescape(fields[1]);
    if (!id || !sprite) throw fail("bad escape sequence");
    record.project_id = std::move(*id);
    record.sprite = std::move(*sprite);
    record.script_flags = std::string(fields[2]);
    if (record.script_flags.find_first_not_of("RPL") != std::string::npos) {
      throw fail("script flags must be R, P or L");
    }
    const char* p = rest.data();
    const char* end = rest.data() + rest.size();
    while (p < end) {
      if (*p == ' ') {
        ++p;
        continue;
      }
      TokenId token = 0;
      auto [next, ec] = std::from_chars(p, end, token);
      if (ec != std::errc() || (next < end && *next != ' ')) throw fail("bad token id");
      if (!vocabulary_.Contains(token)) throw fail("token id outside vocabulary");
      record.tokens.push_back(token);
      p = next;
    }
    const auto scripts = static_cast<std::size_t>(
        std::count(record.tokens.begin(), record.tokens.end(), kBeginScript));
    if (scripts != record.script_flags.size()) {
      throw fail("script flag count does not match BEGIN_SCRIPT markers");
    }
    return record;
  }
  return std::nullopt;
}

std::vector<StreamRecord> ReadStreamFile(const std::filesystem::path& path,
                                         const Vocabulary& vocabulary) {
  std::ifstream in(path);
  if (!in) {
    throw Error(ErrorCode::kIo, fmt::format("cannot open '{}'", path.string()));
  }
  StreamFileReader reader(in, vocabulary);
  std::vector<StreamRecord> records;
  while (auto r = reader.Next()) records.push_back(std::move(*r));
  return records;
}

std::vector<StreamRecord> ReadStreamInputs(const std::filesystem::path& path,
                                           const Vocabulary& vocabulary) {
  if (!std::filesystem::is_directory(path)) return ReadStreamFile(path, vocabulary);
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(path)) {
    if (entry.is_regular_file() && entry.path().extension() == ".streams") {
      files.push_back(entry.path());
    }
  }
  std::sort(files.begin(), files.end());
  std::vector<StreamRecord> records;
  for (const auto& f : files) {
    auto part = ReadStreamFile(f, vocabulary);
    std::move(part.begin(), part.end(), std::back_inserter(records));
  }
  return records;
}

}  // namespace scratchlm
