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

#include "scratchlm/ngram_model.h"

#include <algorithm>
#include <array>
#include <cmath>

#include <fmt/format.h>

#include "scratchlm/error.h"

namespace scratchlm {

std::vector<NgramTable> AdjustedCounts(const NgramCounts& counts) {
  const int n = counts.order();
  std::vector<NgramTable> adjusted(n);
  adjusted[n - 1] = counts.table(n);
  for (int k = 1; k < n; ++k) {
    NgramTable& a = adjusted[k - 1];
    a = counts.LeftExtensionCounts(k);
    for (const auto& [g, c] : counts.start_table(k)) a[g] += c;
  }
  return adjusted;
}

LevelDiscounts FitLevelDiscounts(const NgramTable& adjusted) {
  std::array<double, 5> n{};
  for (const auto& [g, c] : adjusted) {
    if (c >= 1 && c <= 4) n[c] += 1;
  }
  LevelDiscounts d;
  if (n[1] == 0 || n[2] == 0 || n[3] == 0) return d;
  const double y = n[1] / (n[1] + 2 * n[2]);
  const double d1 = 1 - 2 * y * n[2] / n[1];
  const double d2 = 2 - 3 * y * n[3] / n[2];
  const double d3 = 3 - 4 * y * n[4] / n[3];
  if (!(d1 > 0 && d2 > 0 && d3 > 0)) return d;
  return {d1, d2, d3, false};
}

Discounts FitDiscounts(const NgramCounts& counts) {
  Discounts d;
  for (const NgramTable& table : AdjustedCounts(counts)) {
    d.levels.push_back(FitLevelDiscounts(table));
  }
  return d;
}

NgramModel NgramModel::Fit(NgramCounts counts) {
  if (counts.total_tokens() == 0) {
    throw Error(ErrorCode::kEmptyCorpus, "cannot fit a model without tokens");
  }
  NgramModel model(std::move(counts));
  const std::vector<NgramTable> adjusted = AdjustedCounts(model.counts_);
  const int n = model.order();
  model.contexts_.resize(n);
  for (int k = 1; k <= n; ++k) {
    const LevelDiscounts d = FitLevelDiscounts(adjusted[k - 1]);
    model.discounts_.levels.push_back(d);

    // Per context: total count and number of followers seen once, twice and
    // three or more times.
    struct Totals {
      std::uint64_t total = 0;
      std::array<std::uint64_t, 3> followers{};  // count 1, 2, 3+
    };
    std::unordered_map<Ngram, Totals, NgramHash> totals;
    for (const auto& [g, c] : adjusted[k - 1]) {
      if (c == 0) continue;
      Totals& t = totals[g.DropLast()];
      t.total += c;
      ++t.followers[std::min<std::uint64_t>(c, 3) - 1];
    }
    ContextTable& table = model.contexts_[k - 1];
    for (const auto& [g, c] : adjusted[k - 1]) {
      if (c == 0) continue;
      const Ngram h = g.DropLast();
      const double total = static_cast<double>(totals.at(h).total);
      const double mass = std::max(static_cast<double>(c) - d.For(c), 0.0) / total;
      table[h].followers.emplace_back(g.back(), mass);
    }
    for (auto& [h, entry] : table) {
      const Totals& t = totals.at(h);
      const double discount = d.d1 * static_cast<double>(t.followers[0]) +
                              d.d2 * static_cast<double>(t.followers[1]) +
                              d.d3plus * static_cast<double>(t.followers[2]);
      entry.backoff = discount / static_cast<double>(t.total);
      std::sort(entry.followers.begin(), entry.followers.end());
    }
  }
  return model;
}

void NgramModel::CheckTokens(std::span<const TokenId> tokens) const {
  for (TokenId id : tokens) {
    if (id >= vocabulary_size()) {
      throw Error(ErrorCode::kUnknownToken,
                  fmt::format("token id {} outside vocabulary of size {}", id,
                              vocabulary_size()));
    }
  }
}

std::span<const TokenId> NgramModel::Truncate(std::span<const TokenId> context) const {
  const std::size_t keep = static_cast<std::size_t>(order() - 1);
  return context.size() > keep ? context.last(keep) : context;
}

const NgramModel::ContextEntry* NgramModel::FindContext(
    int k, std::span<const TokenId> context) const {
  const ContextTable& table = contexts_[k - 1];
  auto it = table.find(Ngram(context.last(k - 1)));
  return it == table.end() ? nullptr : &it->second;
}

double NgramModel::Probability(std::span<const TokenId> context, TokenId token) const {
  CheckTokens(context);
  CheckTokens({&token, 1});
  context = Truncate(context);
  double p = 1.0 / static_cast<double>(vocabulary_size());
  for (int k = 1; k <= static_cast<int>(context.size()) + 1; ++k) {
    const ContextEntry* entry = FindContext(k, context);
    if (entry == nullptr) continue;
    auto it = std::lower_bound(
        entry->followers.begin(), entry->followers.end(), token,
        [](const auto& f, TokenId w) { return f.first < w; });
    const double mass =
        (it != entry->followers.end() && it->first == token) ? it->second : 0.0;
    p = mass + entry->backoff * p;
  }
  return p;
}

std::vector<double> NgramModel::Distribution(std::span<const TokenId> context) const {
  CheckTokens(context);
  context = Truncate(context);
  std::vector<double> p(vocabulary_size(), 1.0 / static_cast<double>(vocabulary_size()));
  for (int k = 1; k <= static_cast<int>(context.size()) + 1; ++k) {
    const ContextEntry* entry = FindContext(k, context);
    if (entry == nullptr) continue;
    for (double& x : p) x *= entry->backoff;
    for (const auto& [w, mass] : entry->followers) p[w] += mass;
  }
  return p;
}

double NgramModel::SequenceLogProb(std::span<const TokenId> tokens) const {
  if (tokens.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "cannot score an empty sequence");
  }
  double logprob = 0.0;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    logprob += std::log(Probability(tokens.first(i), tokens[i]));
  }
  return logprob;
}

}  // namespace scratchlm
