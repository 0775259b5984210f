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

#ifndef SCRATCHLM_VOCABULARY_H_
#define SCRATCHLM_VOCABULARY_H_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace scratchlm {

using TokenId = std::uint32_t;

enum class BlockCategory {
  kMotion,
  kLooks,
  kSound,
  kEvent,
  kControl,
  kSensing,
  kOperator,
  kData,
  kMyBlocks,
  kPen,
  kStructuralNone,
};

enum class BlockShape { kHat, kStack, kC, kEnd, kOval, kDiamond, kStructural };

inline constexpr int kNumCategories = 11;
inline constexpr int kNumShapes = 7;

std::string_view CategoryName(BlockCategory category);
std::string_view ShapeName(BlockShape shape);
std::optional<BlockCategory> ParseCategory(std::string_view name);
std::optional<BlockShape> ParseShape(std::string_view name);

struct BlockMetadata {
  BlockCategory category;
  BlockShape shape;

  friend bool operator==(const BlockMetadata&, const BlockMetadata&) = default;
};

// Reserved ids precede the concrete blocks so that they do not move when the
// block table is swapped.
inline constexpr TokenId kBeginScript = 0;
inline constexpr TokenId kEndScript = 1;
inline constexpr TokenId kBeginSprite = 2;
inline constexpr TokenId kEndSprite = 3;
inline constexpr TokenId kProcedureDef = 4;
inline constexpr TokenId kNumReservedTokens = 5;

// The four script/sprite boundary markers (not PROCEDURE_DEF).
constexpr bool IsMarker(TokenId id) { return id < kProcedureDef; }

struct Token {
  TokenId id;
  std::string name;
  BlockMetadata metadata;
};

// Closed token vocabulary: reserved entries followed by the concrete blocks
// of a block table. Immutable once built; safe to share across threads.
//
// Block table format (tab separated, '#' comments):
//   name  category  shape  [source opcodes, comma separated]
// A row without source opcodes maps the opcode equal to its name.
class Vocabulary {
 public:
  // The bundled 137-block table.
  static const Vocabulary& Default();

  static Vocabulary FromTable(std::string_view table_text);
  static Vocabulary FromFile(const std::filesystem::path& path);

  // Total number of ids, reserved entries included.
  std::size_t size() const { return tokens_.size(); }
  std::size_t concrete_size() const { return tokens_.size() - kNumReservedTokens; }

  // Throws Error(kUnknownToken) for ids outside the vocabulary.
  const Token& token(TokenId id) const;
  const std::string& name(TokenId id) const { return token(id).name; }
  BlockMetadata Metadata(TokenId id) const { return token(id).metadata; }

  bool Contains(TokenId id) const { return id < tokens_.size(); }
  bool IsConcrete(TokenId id) const {
    return id >= kNumReservedTokens && id < tokens_.size();
  }

  std::optional<TokenId> Find(std::string_view name) const;
  // Like Find, but throws Error(kUnknownToken).
  TokenId Id(std::string_view name) const;
  // Maps a Scratch opcode onto its token; nullopt for menus, prototypes and
  // blocks outside the vocabulary (e.g. non-pen extensions).
  std::optional<TokenId> FromOpcode(std::string_view opcode) const;

  // Generic variable and custom-block-call tokens.
  TokenId var_token() const { return var_token_; }
  TokenId call_token() const { return call_token_; }

  // FNV-1a over the token names in id order; recorded in stream and model
  // files to detect mismatched tables.
  std::uint64_t fingerprint() const { return fingerprint_; }

  // Parses a whitespace- or comma-separated list of token names or numeric
  // ids.
  std::vector<TokenId> ParseTokens(std::string_view text) const;
  std::string FormatTokens(std::span<const TokenId> ids) const;

 private:
  Vocabulary() = default;
  void AddToken(std::string name, BlockMetadata metadata);

  std::vector<Token> tokens_;
  std::unordered_map<std::string, TokenId> by_name_;
  std::unordered_map<std::string, TokenId> by_opcode_;
  TokenId var_token_ = 0;
  TokenId call_token_ = 0;
  std::uint64_t fingerprint_ = 0;
};

}  // namespace scratchlm

#endif  // SCRATCHLM_VOCABULARY_H_
