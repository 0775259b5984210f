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

#include "scratchlm/bug_finder.h"

#include <algorithm>
#include <numeric>
#include <random>
#include <thread>
#include <unordered_map>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "scratchlm/error.h"

namespace scratchlm {
namespace {

bool LocationLess(const SuspiciousSequence& a, const SuspiciousSequence& b) {
  return std::tie(a.sprite_index, a.script_index, a.offset) <
         std::tie(b.sprite_index, b.script_index, b.offset);
}

bool RankLess(const SuspiciousSequence& a, const SuspiciousSequence& b) {
  if (a.logprob != b.logprob) return a.logprob < b.logprob;
  return LocationLess(a, b);
}

}  // namespace

std::vector<SuspiciousSequence> ExtractSequences(std::span<const ScriptStream> scripts,
                                                 int length,
                                                 const ExtractOptions& options) {
  if (length < 1) {
    throw Error(ErrorCode::kInvalidArgument,
                fmt::format("window length must be positive, got {}", length));
  }
  const auto l = static_cast<std::size_t>(length);
  std::unordered_map<std::string, int> sprite_index;
  std::vector<SuspiciousSequence> windows;
  for (const ScriptStream& s : scripts) {
    const int sprite =
        sprite_index.try_emplace(s.sprite, static_cast<int>(sprite_index.size())).first->second;
    if (!s.reachable) continue;
    auto emit = [&](std::size_t offset, std::size_t size) {
      SuspiciousSequence w;
      w.tokens.assign(s.tokens.begin() + offset, s.tokens.begin() + offset + size);
      if (s.block_ids.size() == s.tokens.size()) {
        w.block_ids.assign(s.block_ids.begin() + offset,
                           s.block_ids.begin() + offset + size);
      } else {
        w.block_ids.assign(size, "");
      }
      w.sprite = s.sprite;
      w.sprite_index = sprite;
      w.script_index = s.script_index;
      w.offset = offset;
      windows.push_back(std::move(w));
    };
    if (s.tokens.size() < l) {
      if (options.allow_short && !s.tokens.empty()) emit(0, s.tokens.size());
      continue;
    }
    for (std::size_t i = 0; i + l <= s.tokens.size(); ++i) emit(i, l);
  }
  return windows;
}

std::vector<SuspiciousSequence> ExtractSequences(const TokenizedProject& project,
                                                 int length,
                                                 const ExtractOptions& options) {
  std::vector<ScriptStream> scripts;
  for (const SpriteStreams& sprite : project.sprites) {
    scripts.insert(scripts.end(), sprite.scripts.begin(), sprite.scripts.end());
  }
  return ExtractSequences(scripts, length, options);
}

BugReport RankSuspicious(const NgramModel& model,
                         std::vector<SuspiciousSequence> candidates, std::size_t k,
                         unsigned threads) {
  BugReport report;
  if (!candidates.empty()) report.window_length = static_cast<int>(candidates[0].tokens.size());
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(candidates.size())));
  auto score = [&](unsigned t) {
    for (std::size_t i = t; i < candidates.size(); i += threads) {
      candidates[i].logprob = model.SequenceLogProb(candidates[i].tokens);
    }
  };
  if (threads == 1) {
    score(0);
  } else {
    std::vector<std::jthread> workers;
    for (unsigned t = 0; t < threads; ++t) workers.emplace_back(score, t);
  }
  const std::size_t keep = std::min(k, candidates.size());
  std::partial_sort(candidates.begin(), candidates.begin() + keep, candidates.end(),
                    RankLess);
  candidates.resize(keep);
  report.sequences = std::move(candidates);
  return report;
}

BugReport RandomSelection(std::vector<SuspiciousSequence> candidates, std::size_t k,
                          std::uint64_t seed) {
  BugReport report;
  if (!candidates.empty()) report.window_length = static_cast<int>(candidates[0].tokens.size());
  std::mt19937_64 rng(seed);
  std::vector<std::size_t> order(candidates.size());
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);
  order.resize(std::min(k, order.size()));
  std::sort(order.begin(), order.end());
  for (std::size_t i : order) report.sequences.push_back(std::move(candidates[i]));
  return report;
}

NgramModel TrainReferenceModel(std::span<const ScriptStream> scripts, int order,
                               const Vocabulary& vocabulary) {
  std::vector<std::vector<TokenId>> units;
  for (const ScriptStream& s : scripts) {
    if (s.reachable) units.push_back(s.tokens);
  }
  if (units.empty()) {
    throw Error(ErrorCode::kEmptyCorpus, "reference programs contain no reachable script");
  }
  return NgramModel::Fit(
      CountNgrams(units, order, vocabulary.size(), vocabulary.fingerprint()));
}

NgramModel TrainReferenceModel(std::span<const TokenizedProject> references, int order,
                               const Vocabulary& vocabulary) {
  std::vector<ScriptStream> scripts;
  for (const TokenizedProject& p : references) {
    for (const SpriteStreams& sprite : p.sprites) {
      scripts.insert(scripts.end(), sprite.scripts.begin(), sprite.scripts.end());
    }
  }
  return TrainReferenceModel(std::span<const ScriptStream>(scripts), order, vocabulary);
}

void DropRareTokens(std::vector<ScriptStream>& scripts, const NgramCounts& training,
                    std::uint64_t min_count) {
  if (min_count == 0) return;
  for (ScriptStream& s : scripts) {
    std::vector<TokenId> tokens;
    std::vector<std::string> ids;
    for (std::size_t i = 0; i < s.tokens.size(); ++i) {
      const TokenId t = s.tokens[i];
      if (t >= kNumReservedTokens && training.Count(Ngram{t}) < min_count) continue;
      tokens.push_back(t);
      if (i < s.block_ids.size()) ids.push_back(s.block_ids[i]);
    }
    s.tokens = std::move(tokens);
    s.block_ids = std::move(ids);
  }
}

std::string FormatBugReportTable(const BugReport& report, const Vocabulary& vocabulary) {
  std::string out = fmt::format("{:>4}  {:>10}  {:<24}  {}\n", "rank", "logprob",
                                "location", "tokens");
  for (std::size_t i = 0; i < report.sequences.size(); ++i) {
    const SuspiciousSequence& s = report.sequences[i];
    out += fmt::format("{:>4}  {:>10.4f}  {:<24}  {}\n", i + 1, s.logprob,
                       fmt::format("{}#{}@{}", s.sprite, s.script_index, s.offset),
                       vocabulary.FormatTokens(s.tokens));
  }
  return out;
}

std::string FormatBugReportRecords(const BugReport& report, const Vocabulary& vocabulary) {
  std::string out;
  for (std::size_t i = 0; i < report.sequences.size(); ++i) {
    const SuspiciousSequence& s = report.sequences[i];
    nlohmann::ordered_json j;
    j["program"] = report.program_id;
    j["length"] = report.window_length;
    j["rank"] = i + 1;
    j["logprob"] = s.logprob;
    j["sprite"] = s.sprite;
    j["script"] = s.script_index;
    j["offset"] = s.offset;
    j["tokens"] = s.tokens;
    std::vector<std::string> names;
    for (TokenId t : s.tokens) names.push_back(vocabulary.name(t));
    j["names"] = names;
    j["blocks"] = s.block_ids;
    out += j.dump();
    out += '\n';
  }
  return out;
}

}  // namespace scratchlm
