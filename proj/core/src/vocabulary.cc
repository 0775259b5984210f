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

#include "scratchlm/vocabulary.h"

#include <array>
#include <charconv>
#include <fstream>
#include <sstream>

#include <fmt/format.h>

#include "scratchlm/error.h"

namespace scratchlm {

// Generated from core/data/blocks.tsv at configure time.
extern const std::string_view kBundledBlockTable;

namespace {

constexpr std::array<std::string_view, kNumCategories> kCategoryNames = {
    "motion",  "looks", "sound",    "event", "control",        "sensing",
    "operator", "data", "myblocks", "pen",   "structural-none"};

constexpr std::array<std::string_view, kNumShapes> kShapeNames = {
    "hat", "stack", "c", "end", "oval", "diamond", "structural"};

constexpr std::uint64_t kFnvOffset = 14695981039346656037ULL;
constexpr std::uint64_t kFnvPrime = 1099511628211ULL;

std::vector<std::string_view> Split(std::string_view text, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    std::size_t end = text.find(sep, start);
    parts.push_back(text.substr(start, end - start));
    if (end == std::string_view::npos) break;
    start = end + 1;
  }
  return parts;
}

std::string_view Trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

}  // namespace

std::string_view CategoryName(BlockCategory category) {
  return kCategoryNames[static_cast<int>(category)];
}

std::string_view ShapeName(BlockShape shape) {
  return kShapeNames[static_cast<int>(shape)];
}

std::optional<BlockCategory> ParseCategory(std::string_view name) {
  for (int i = 0; i < kNumCategories; ++i) {
    if (kCategoryNames[i] == name) return static_cast<BlockCategory>(i);
  }
  return std::nullopt;
}

std::optional<BlockShape> ParseShape(std::string_view name) {
  for (int i = 0; i < kNumShapes; ++i) {
    if (kShapeNames[i] == name) return static_cast<BlockShape>(i);
  }
  return std::nullopt;
}

const Vocabulary& Vocabulary::Default() {
  static const Vocabulary vocabulary = FromTable(kBundledBlockTable);
  return vocabulary;
}

void Vocabulary::AddToken(std::string name, BlockMetadata metadata) {
  const auto id = static_cast<TokenId>(tokens_.size());
  if (!by_name_.emplace(name, id).second) {
    throw Error(ErrorCode::kInvalidArgument,
                fmt::format("duplicate token name '{}' in block table", name));
  }
  tokens_.push_back(Token{id, std::move(name), metadata});
}

Vocabulary Vocabulary::FromTable(std::string_view table_text) {
  Vocabulary v;
  constexpr BlockMetadata kMarker{BlockCategory::kStructuralNone,
                                  BlockShape::kStructural};
  v.AddToken("BEGIN_SCRIPT", kMarker);
  v.AddToken("END_SCRIPT", kMarker);
  v.AddToken("BEGIN_SPRITE", kMarker);
  v.AddToken("END_SPRITE", kMarker);
  v.AddToken("PROCEDURE_DEF", {BlockCategory::kMyBlocks, BlockShape::kHat});

  int line_number = 0;
  for (std::string_view line : Split(table_text, '\n')) {
    ++line_number;
    line = Trim(line);
    if (line.empty() || line.front() == '#') continue;
    auto fields = Split(line, '\t');
    if (fields.size() < 3 || fields.size() > 4) {
      throw Error(ErrorCode::kInvalidArgument,
                  fmt::format("block table line {}: expected 3 or 4 fields",
                              line_number));
    }
    auto category = ParseCategory(Trim(fields[1]));
    auto shape = ParseShape(Trim(fields[2]));
    if (!category || !shape || *category == BlockCategory::kStructuralNone ||
        *shape == BlockShape::kStructural) {
      throw Error(ErrorCode::kInvalidArgument,
                  fmt::format("block table line {}: bad category or shape",
                              line_number));
    }
    std::string name(Trim(fields[0]));
    const auto id = static_cast<TokenId>(v.tokens_.size());
    v.AddToken(name, {*category, *shape});
    std::string_view sources =
        fields.size() == 4 ? Trim(fields[3]) : std::string_view{};
    if (sources.empty()) {
      v.by_opcode_[name] = id;
    } else {
      for (std::string_view opcode : Split(sources, ',')) {
        opcode = Trim(opcode);
        if (!opcode.empty()) v.by_opcode_[std::string(opcode)] = id;
      }
    }
  }

  auto var = v.Find("VAR");
  auto call = v.Find("CALL");
  if (!var || !call) {
    throw Error(ErrorCode::kInvalidArgument,
                "block table must define the generic VAR and CALL tokens");
  }
  v.var_token_ = *var;
  v.call_token_ = *call;

  std::uint64_t hash = kFnvOffset;
  for (const Token& t : v.tokens_) {
    for (unsigned char c : t.name) {
      hash = (hash ^ c) * kFnvPrime;
    }
    hash = (hash ^ 0xffu) * kFnvPrime;
  }
  v.fingerprint_ = hash;
  return v;
}

Vocabulary Vocabulary::FromFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorCode::kIo,
                fmt::format("cannot open block table '{}'", path.string()));
  }
  std::ostringstream text;
  text << in.rdbuf();
  return FromTable(text.str());
}

const Token& Vocabulary::token(TokenId id) const {
  if (id >= tokens_.size()) {
    throw Error(ErrorCode::kUnknownToken,
                fmt::format("token id {} outside vocabulary of size {}", id,
                            tokens_.size()));
  }
  return tokens_[id];
}

std::optional<TokenId> Vocabulary::Find(std::string_view name) const {
  auto it = by_name_.find(std::string(name));
  if (it == by_name_.end()) return std::nullopt;
  return it->second;
}

TokenId Vocabulary::Id(std::string_view name) const {
  auto id = Find(name);
  if (!id) {
    throw Error(ErrorCode::kUnknownToken,
                fmt::format("unknown token '{}'", name));
  }
  return *id;
}

std::optional<TokenId> Vocabulary::FromOpcode(std::string_view opcode) const {
  auto it = by_opcode_.find(std::string(opcode));
  if (it == by_opcode_.end()) return std::nullopt;
  return it->second;
}

std::vector<TokenId> Vocabulary::ParseTokens(std::string_view text) const {
  std::vector<TokenId> ids;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() &&
           (text[i] == ' ' || text[i] == ',' || text[i] == '\t' ||
            text[i] == '\n')) {
      ++i;
    }
    std::size_t start = i;
    while (i < text.size() && text[i] != ' ' && text[i] != ',' &&
           text[i] != '\t' && text[i] != '\n') {
      ++i;
    }
    if (start == i) break;
    std::string_view word = text.substr(start, i - start);
    TokenId id = 0;
    auto [ptr, ec] = std::from_chars(word.data(), word.data() + word.size(), id);
    if (ec == std::errc() && ptr == word.data() + word.size()) {
      token(id);  // range check
      ids.push_back(id);
    } else {
      ids.push_back(Id(word));
    }
  }
  return ids;
}

std::string Vocabulary::FormatTokens(std::span<const TokenId> ids) const {
  std::string out;
  for (TokenId id : ids) {
    if (!out.empty()) out += ' ';
    out += name(id);
  }
  return out;
}

}  // namespace scratchlm
