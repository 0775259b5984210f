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

#ifndef SCRATCHLM_NGRAM_COUNTS_H_
#define SCRATCHLM_NGRAM_COUNTS_H_

#include <array>
#include <compare>
#include <cstdint>
#include <span>
#include <unordered_map>
#include <vector>

#include "scratchlm/vocabulary.h"

namespace scratchlm {

inline constexpr int kMaxOrder = 8;

// Fixed-capacity token sequence of length <= kMaxOrder, used as a hash key.
class Ngram {
 public:
  Ngram() = default;
  explicit Ngram(std::span<const TokenId> ids);
  Ngram(std::initializer_list<TokenId> ids)
      : Ngram(std::span<const TokenId>(ids.begin(), ids.size())) {}

  std::size_t size() const { return size_; }
  bool empty() const { return size_ == 0; }
  TokenId operator[](std::size_t i) const { return ids_[i]; }
  std::span<const TokenId> view() const { return {ids_.data(), size_}; }

  // All but the first token.
  Ngram DropFirst() const { return Ngram(view().subspan(1)); }
  // All but the last token.
  Ngram DropLast() const { return Ngram(view().first(size_ - 1)); }
  TokenId back() const { return ids_[size_ - 1]; }

  friend bool operator==(const Ngram& a, const Ngram& b) {
    return a.size_ == b.size_ && a.ids_ == b.ids_;
  }
  friend std::strong_ordering operator<=>(const Ngram& a, const Ngram& b);

 private:
  std::array<TokenId, kMaxOrder> ids_{};
  std::uint8_t size_ = 0;
};

struct NgramHash {
  std::size_t operator()(const Ngram& g) const noexcept;
};

using NgramTable = std::unordered_map<Ngram, std::uint64_t, NgramHash>;

// Raw occurrence counts of every k-gram, 1 <= k <= order, over a set of
// training units (one unit per script stream, markers included). Windows never
// cross unit boundaries.
class NgramCounts {
 public:
  NgramCounts(int order, std::size_t vocabulary_size,
              std::uint64_t vocabulary_fingerprint = 0);

  int order() const { return order_; }
  std::size_t vocabulary_size() const { return vocabulary_size_; }
  std::uint64_t vocabulary_fingerprint() const { return vocabulary_fingerprint_; }

  // Counts all windows of length 1..order in `unit`. Throws
  // Error(kUnknownToken) for ids outside the vocabulary.
  void AddUnit(std::span<const TokenId> unit);

  // Raw k-gram counts.
  const NgramTable& table(int k) const { return tables_.at(k - 1); }
  // How often each k-gram occurs as the first k tokens of a unit.
  const NgramTable& start_table(int k) const { return starts_.at(k - 1); }

  std::uint64_t Count(const Ngram& g) const;
  std::uint64_t total_tokens() const;
  std::uint64_t units() const { return units_; }

  // N1+(. g): the number of distinct tokens that precede each k-gram g,
  // derived from the (k+1)-gram table. Requires k < order.
  NgramTable LeftExtensionCounts(int k) const;

  // Direct table access for deserialization.
  void SetCount(const Ngram& g, std::uint64_t count);
  void SetStartCount(const Ngram& g, std::uint64_t count);
  void set_units(std::uint64_t units) { units_ = units; }

  friend bool operator==(const NgramCounts&, const NgramCounts&) = default;

 private:
  int order_;
  std::size_t vocabulary_size_;
  std::uint64_t vocabulary_fingerprint_;
  std::uint64_t units_ = 0;
  std::vector<NgramTable> tables_;
  std::vector<NgramTable> starts_;
};

// Counts every unit. Throws Error(kEmptyCorpus) if no token was seen.
NgramCounts CountNgrams(std::span<const std::vector<TokenId>> units, int order,
                        std::size_t vocabulary_size,
                        std::uint64_t vocabulary_fingerprint = 0);

// Pointwise sum; derived continuation counts are recomputed from the merged
// raw tables, never added. Throws Error(kOrderMismatch) when order or
// vocabulary differ.
NgramCounts MergeCounts(const NgramCounts& a, const NgramCounts& b);

// Entries of a table sorted by n-gram, for deterministic output.
std::vector<std::pair<Ngram, std::uint64_t>> SortedEntries(const NgramTable& table);

}  // namespace scratchlm

#endif  // SCRATCHLM_NGRAM_COUNTS_H_
