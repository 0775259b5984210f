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

#ifndef SCRATCHLM_BUG_FINDER_H_
#define SCRATCHLM_BUG_FINDER_H_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "scratchlm/ngram_model.h"
#include "scratchlm/tokenizer.h"

namespace scratchlm {

inline constexpr int kDefaultWindowLength = 4;
inline constexpr int kDefaultReferenceOrder = 3;
inline constexpr std::size_t kDefaultBottomK = 10;

// Window lengths the bug finder was evaluated with; others work but are
// worth a warning.
constexpr bool IsEvaluatedWindowLength(int length) { return length >= 3 && length <= 6; }

// A fixed-length token window of one script.
struct SuspiciousSequence {
  std::vector<TokenId> tokens;
  // Block ids parallel to tokens (empty for markers).
  std::vector<std::string> block_ids;
  double logprob = 0.0;
  std::string sprite;
  // Position of the sprite in the program, for stable ordering.
  int sprite_index = 0;
  int script_index = 0;
  std::size_t offset = 0;
};

struct BugReport {
  std::string program_id;
  int window_length = kDefaultWindowLength;
  // Least probable first.
  std::vector<SuspiciousSequence> sequences;
};

struct ExtractOptions {
  // Keep scripts shorter than the window as one short window.
  bool allow_short = false;
};

// All length-L windows of every reachable script (markers included). Loose
// scripts contribute nothing. Windows never span two scripts.
std::vector<SuspiciousSequence> ExtractSequences(const TokenizedProject& project,
                                                 int length,
                                                 const ExtractOptions& options = {});
std::vector<SuspiciousSequence> ExtractSequences(std::span<const ScriptStream> scripts,
                                                 int length,
                                                 const ExtractOptions& options = {});

// Scores every candidate with SequenceLogProb and keeps the k lowest, ordered
// by logprob, then sprite, script and offset.
BugReport RankSuspicious(const NgramModel& model,
                         std::vector<SuspiciousSequence> candidates, std::size_t k,
                         unsigned threads = 1);

// k candidates drawn uniformly without replacement, in location order. The
// comparison baseline for bottom-k selection.
BugReport RandomSelection(std::vector<SuspiciousSequence> candidates, std::size_t k,
                          std::uint64_t seed);

// Model over the reachable scripts of the reference programs. Throws
// Error(kEmptyCorpus) when they contain no reachable script.
NgramModel TrainReferenceModel(std::span<const TokenizedProject> references,
                               int order = kDefaultReferenceOrder,
                               const Vocabulary& vocabulary = Vocabulary::Default());
NgramModel TrainReferenceModel(std::span<const ScriptStream> scripts,
                               int order = kDefaultReferenceOrder,
                               const Vocabulary& vocabulary = Vocabulary::Default());

// Removes concrete tokens seen fewer than `min_count` times in training from
// each script before windowing (Bugram-style preprocessing; off by default).
void DropRareTokens(std::vector<ScriptStream>& scripts, const NgramCounts& training,
                    std::uint64_t min_count);

// Human-readable table: rank, logprob, location, tokens.
std::string FormatBugReportTable(const BugReport& report, const Vocabulary& vocabulary);
// One JSON object per line, one line per sequence.
std::string FormatBugReportRecords(const BugReport& report, const Vocabulary& vocabulary);

}  // namespace scratchlm

#endif  // SCRATCHLM_BUG_FINDER_H_
