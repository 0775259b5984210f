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

#ifndef SCRATCHLM_NGRAM_MODEL_H_
#define SCRATCHLM_NGRAM_MODEL_H_

#include <span>
#include <unordered_map>
#include <utility>
#include <vector>

#include "scratchlm/ngram_counts.h"

namespace scratchlm {

// Modified Kneser-Ney discounts for one level of the model.
struct LevelDiscounts {
  double d1 = 0.5;
  double d2 = 0.5;
  double d3plus = 0.5;
  // True when the count-of-counts were degenerate and the fixed values apply.
  bool fallback = true;

  double For(std::uint64_t count) const {
    if (count == 0) return 0.0;
    if (count == 1) return d1;
    if (count == 2) return d2;
    return d3plus;
  }
};

// Discounts for levels 1..n; levels[k - 1] belongs to k-grams.
struct Discounts {
  std::vector<LevelDiscounts> levels;
  const LevelDiscounts& level(int k) const { return levels.at(k - 1); }
};

inline constexpr double kFallbackDiscount = 0.5;

// The counts a Kneser-Ney level is estimated from. The highest order uses raw
// counts; lower orders use N1+(. g) plus the number of units starting with g.
std::vector<NgramTable> AdjustedCounts(const NgramCounts& counts);

// Count-of-counts estimate per level:
//   Y = n1 / (n1 + 2 n2), D1 = 1 - 2Y n2/n1, D2 = 2 - 3Y n3/n2,
//   D3+ = 3 - 4Y n4/n3.
// Falls back to 0.5 for all three when any of n1..n3 is zero or any estimate
// is not positive.
Discounts FitDiscounts(const NgramCounts& counts);
LevelDiscounts FitLevelDiscounts(const NgramTable& adjusted);

// Interpolated modified Kneser-Ney model. Immutable after Fit; safe for
// concurrent queries.
class NgramModel {
 public:
  static NgramModel Fit(NgramCounts counts);

  int order() const { return counts_.order(); }
  std::size_t vocabulary_size() const { return counts_.vocabulary_size(); }
  const NgramCounts& counts() const { return counts_; }
  const Discounts& discounts() const { return discounts_; }

  // P(token | context). Only the last order-1 context tokens are used. Throws
  // Error(kUnknownToken) for ids outside the vocabulary.
  double Probability(std::span<const TokenId> context, TokenId token) const;

  // P(w | context) for every w in the vocabulary, indexed by token id.
  std::vector<double> Distribution(std::span<const TokenId> context) const;

  // Natural-log probability of `tokens`, each conditioned on up to order-1
  // preceding tokens of the sequence.
  double SequenceLogProb(std::span<const TokenId> tokens) const;

 private:
  struct ContextEntry {
    // gamma(h) = sum_w D(a(hw)) / sum_w a(hw).
    double backoff = 0.0;
    // (w, max(a(hw) - D, 0) / sum_w a(hw)), sorted by w.
    std::vector<std::pair<TokenId, double>> followers;
  };
  using ContextTable = std::unordered_map<Ngram, ContextEntry, NgramHash>;

  explicit NgramModel(NgramCounts counts) : counts_(std::move(counts)) {}
  void CheckTokens(std::span<const TokenId> tokens) const;
  std::span<const TokenId> Truncate(std::span<const TokenId> context) const;
  const ContextEntry* FindContext(int k, std::span<const TokenId> context) const;

  NgramCounts counts_;
  Discounts discounts_;
  // contexts_[k - 1] maps (k-1)-token contexts to level-k statistics.
  std::vector<ContextTable> contexts_;
};

}  // namespace scratchlm

#endif  // SCRATCHLM_NGRAM_MODEL_H_
