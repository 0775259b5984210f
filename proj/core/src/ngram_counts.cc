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

#include "scratchlm/ngram_counts.h"

#include <algorithm>

#include <fmt/format.h>

#include "scratchlm/error.h"

namespace scratchlm {

Ngram::Ngram(std::span<const TokenId> ids) {
  if (ids.size() > kMaxOrder) {
    throw Error(ErrorCode::kInvalidArgument,
                fmt::format("n-gram of length {} exceeds the maximum order {}",
                            ids.size(), kMaxOrder));
  }
  std::copy(ids.begin(), ids.end(), ids_.begin());
  size_ = static_cast<std::uint8_t>(ids.size());
}

std::strong_ordering operator<=>(const Ngram& a, const Ngram& b) {
  return std::lexicographical_compare_three_way(
      a.ids_.begin(), a.ids_.begin() + a.size_, b.ids_.begin(),
      b.ids_.begin() + b.size_);
}

std::size_t NgramHash::operator()(const Ngram& g) const noexcept {
  std::uint64_t h = 14695981039346656037ULL ^ g.size();
  for (TokenId id : g.view()) {
    h ^= id;
    h *= 1099511628211ULL;
    h ^= h >> 29;
  }
  return static_cast<std::size_t>(h);
}

NgramCounts::NgramCounts(int order, std::size_t vocabulary_size,
                         std::uint64_t vocabulary_fingerprint)
    : order_(order),
      vocabulary_size_(vocabulary_size),
      vocabulary_fingerprint_(vocabulary_fingerprint) {
  if (order < 1 || order > kMaxOrder) {
    throw Error(ErrorCode::kInvalidArgument,
                fmt::format("order must be in 1..{}, got {}", kMaxOrder, order));
  }
  if (vocabulary_size == 0) {
    throw Error(ErrorCode::kInvalidArgument, "vocabulary must not be empty");
  }
  tables_.resize(order);
  starts_.resize(order);
}

void NgramCounts::AddUnit(std::span<const TokenId> unit) {
  for (TokenId id : unit) {
    if (id >= vocabulary_size_) {
      throw Error(ErrorCode::kUnknownToken,
                  fmt::format("token id {} outside vocabulary of size {}", id,
                              vocabulary_size_));
    }
  }
  if (unit.empty()) return;
  ++units_;
  for (int k = 1; k <= order_; ++k) {
    if (unit.size() < static_cast<std::size_t>(k)) break;
    NgramTable& table = tables_[k - 1];
    for (std::size_t i = 0; i + k <= unit.size(); ++i) {
      ++table[Ngram(unit.subspan(i, k))];
    }
    ++starts_[k - 1][Ngram(unit.first(k))];
  }
}

std::uint64_t NgramCounts::Count(const Ngram& g) const {
  if (g.empty() || g.size() > static_cast<std::size_t>(order_)) return 0;
  const NgramTable& t = tables_[g.size() - 1];
  auto it = t.find(g);
  return it == t.end() ? 0 : it->second;
}

std::uint64_t NgramCounts::total_tokens() const {
  std::uint64_t total = 0;
  for (const auto& [g, c] : tables_[0]) total += c;
  return total;
}

NgramTable NgramCounts::LeftExtensionCounts(int k) const {
  if (k < 1 || k >= order_) {
    throw Error(ErrorCode::kInvalidArgument,
                fmt::format("left extensions need 1 <= k < order, got k={}", k));
  }
  NgramTable extensions;
  for (const auto& [g, c] : tables_[k]) {
    if (c > 0) ++extensions[g.DropFirst()];
  }
  return extensions;
}

void NgramCounts::SetCount(const Ngram& g, std::uint64_t count) {
  tables_.at(g.size() - 1)[g] = count;
}

void NgramCounts::SetStartCount(const Ngram& g, std::uint64_t count) {
  starts_.at(g.size() - 1)[g] = count;
}

NgramCounts CountNgrams(std::span<const std::vector<TokenId>> units, int order,
                        std::size_t vocabulary_size,
                        std::uint64_t vocabulary_fingerprint) {
  NgramCounts counts(order, vocabulary_size, vocabulary_fingerprint);
  for (const auto& unit : units) counts.AddUnit(unit);
  if (counts.total_tokens() == 0) {
    throw Error(ErrorCode::kEmptyCorpus, "no tokens in the training corpus");
  }
  return counts;
}

NgramCounts MergeCounts(const NgramCounts& a, const NgramCounts& b) {
  if (a.order() != b.order() || a.vocabulary_size() != b.vocabulary_size() ||
      a.vocabulary_fingerprint() != b.vocabulary_fingerprint()) {
    throw Error(ErrorCode::kOrderMismatch,
                fmt::format("cannot merge counts of order {} (|V|={}) with order "
                            "{} (|V|={})",
                            a.order(), a.vocabulary_size(), b.order(),
                            b.vocabulary_size()));
  }
  NgramCounts merged = a;
  for (int k = 1; k <= b.order(); ++k) {
    for (const auto& [g, c] : b.table(k)) merged.SetCount(g, merged.Count(g) + c);
    for (const auto& [g, c] : b.start_table(k)) {
      const auto& starts = merged.start_table(k);
      auto it = starts.find(g);
      merged.SetStartCount(g, (it == starts.end() ? 0 : it->second) + c);
    }
  }
  merged.set_units(a.units() + b.units());
  return merged;
}

std::vector<std::pair<Ngram, std::uint64_t>> SortedEntries(const NgramTable& table) {
  std::vector<std::pair<Ngram, std::uint64_t>> entries(table.begin(), table.end());
  std::sort(entries.begin(), entries.end(),
            [](const auto& x, const auto& y) { return x.first < y.first; });
  return entries;
}

}  // namespace scratchlm
