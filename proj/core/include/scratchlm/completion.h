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

#ifndef SCRATCHLM_COMPLETION_H_
#define SCRATCHLM_COMPLETION_H_

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "scratchlm/ngram_model.h"
#include "scratchlm/tokenizer.h"

namespace scratchlm {

struct Suggestion {
  TokenId token = 0;
  double probability = 0.0;

  friend bool operator==(const Suggestion&, const Suggestion&) = default;
};

// The up to n-1 tokens preceding `position` in `tokens`. Throws
// Error(kInvalidArgument) if position > tokens.size().
std::vector<TokenId> ExtractContext(std::span<const TokenId> tokens,
                                    std::size_t position, int n);

// True for tokens that are never offered as suggestions: BEGIN_SCRIPT,
// END_SCRIPT, the sprite markers and PROCEDURE_DEF.
constexpr bool IsExcludedSuggestion(TokenId id) { return id < kNumReservedTokens; }

// Top-x next-block suggestions, by descending probability and then ascending
// token id. When END_SCRIPT is the single most likely continuation the result
// is replaced by the suggestions for a new script, i.e. for the context
// [BEGIN_SCRIPT]; `new_script` (if given) reports whether that happened.
std::vector<Suggestion> Complete(const NgramModel& model,
                                 std::span<const TokenId> context, std::size_t x,
                                 bool* new_script = nullptr);

// One predictable position: a concrete block, with the suggestions the model
// made from its context.
struct PredictionRecord {
  std::string project_id;
  std::string sprite;
  int script_index = 0;
  std::size_t position = 0;
  std::vector<TokenId> context;
  TokenId truth = 0;
  std::vector<Suggestion> suggestions;

  // 1-based rank of the truth among the suggestions, 0 if absent.
  std::size_t Rank() const;
  bool HitAt(std::size_t x) const {
    const std::size_t r = Rank();
    return r != 0 && r <= x;
  }
};

struct BatchOptions {
  // Suggestions kept per record; accuracy is available for every x up to it.
  std::size_t max_x = 10;
  // Worker threads; 0 picks the hardware concurrency.
  unsigned threads = 1;
};

struct BatchResult {
  std::vector<PredictionRecord> records;
  // Positions skipped because their truth cannot be suggested.
  std::size_t end_positions = 0;
  std::size_t procedure_positions = 0;
};

// Runs completion at every concrete-block position of every stream, in
// stream order. END_SCRIPT and PROCEDURE_DEF positions are not targets but
// remain part of the contexts.
BatchResult BatchEvaluate(const NgramModel& model,
                          std::span<const ScriptStream> streams,
                          const BatchOptions& options = {});

// Line-delimited JSON prediction records (see docs/prediction_records.md).
std::string FormatPredictionRecord(const PredictionRecord& record);
PredictionRecord ParsePredictionRecord(std::string_view line);
void WritePredictionRecords(std::ostream& out,
                            std::span<const PredictionRecord> records);
std::vector<PredictionRecord> ReadPredictionRecords(std::istream& in);

}  // namespace scratchlm

#endif  // SCRATCHLM_COMPLETION_H_
