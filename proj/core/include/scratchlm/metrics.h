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

#ifndef SCRATCHLM_METRICS_H_
#define SCRATCHLM_METRICS_H_

#include <cstddef>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "scratchlm/bug_finder.h"
#include "scratchlm/completion.h"
#include "scratchlm/vocabulary.h"

namespace scratchlm {

// Completion accuracy: the share of records whose truth is among the top x
// suggestions. Throws Error(kEmptyRecords) for an empty record set.
double TopXAccuracy(std::span<const PredictionRecord> records, std::size_t x);

enum class Grouping { kCategory, kShape };

struct GroupAccuracy {
  std::string group;
  std::size_t count = 0;
  // Share of all records whose truth falls in this group.
  double share = 0.0;
  double accuracy = 0.0;
};

// Accuracy at x per block category or shape, for every group that occurs,
// in category/shape declaration order. Throws Error(kEmptyRecords), or
// Error(kUnknownToken) for truths outside the vocabulary.
std::vector<GroupAccuracy> AccuracyByGroup(std::span<const PredictionRecord> records,
                                           Grouping grouping, std::size_t x,
                                           const Vocabulary& vocabulary);

// Accuracy per (order, x), rows by order.
struct AccuracyGrid {
  std::vector<int> orders;
  std::vector<std::size_t> xs;
  std::vector<std::vector<double>> accuracy;
};
std::string FormatAccuracyGrid(const AccuracyGrid& grid);
std::string FormatGroupTable(std::span<const GroupAccuracy> rows, std::string_view title);

// 100 * found / total. Throws Error(kZeroTotal) when total is 0 and
// Error(kInvalidArgument) when found > total.
double PercentBugsFound(std::size_t found, std::size_t total);

// A known bug, identified by the blocks it involves. A bug touching several
// blocks appears once per block.
struct GroundTruthBug {
  std::string program_id;
  std::string bug_id;
  std::string block_id;
};

// Tab-separated `program_id  bug_id  block_id`, '#' comments allowed.
std::vector<GroundTruthBug> ReadGroundTruth(const std::filesystem::path& path);

struct SelectionScore {
  std::size_t selected = 0;
  std::size_t with_bug = 0;    // selected windows touching at least one bug
  std::size_t bugs_found = 0;  // distinct bugs touched by some selected window
  std::size_t total_bugs = 0;
  // with_bug / selected, 0 for an empty selection.
  double precision = 0.0;
  double percent_found = 0.0;
};

// Scores a selection of windows of one program against that program's bugs.
// Throws Error(kZeroTotal) when the program has no bugs.
SelectionScore ScoreSelection(const BugReport& report,
                              std::span<const GroundTruthBug> program_bugs);

struct BugEvalRecord {
  std::string program_id;
  SelectionScore bottom;
  SelectionScore random;
};

std::string FormatBugEvalRecord(const BugEvalRecord& record);

}  // namespace scratchlm

#endif  // SCRATCHLM_METRICS_H_
