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

#include "scratchlm/metrics.h"

#include <array>
#include <fstream>
#include <set>
#include <unordered_map>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "scratchlm/error.h"

namespace scratchlm {
namespace {

void RequireRecords(std::span<const PredictionRecord> records) {
  if (records.empty()) throw Error(ErrorCode::kEmptyRecords, "no prediction records");
}

}  // namespace

double TopXAccuracy(std::span<const PredictionRecord> records, std::size_t x) {
  RequireRecords(records);
  std::size_t hits = 0;
  for (const PredictionRecord& r : records) hits += r.HitAt(x);
  return static_cast<double>(hits) / static_cast<double>(records.size());
}

std::vector<GroupAccuracy> AccuracyByGroup(std::span<const PredictionRecord> records,
                                           Grouping grouping, std::size_t x,
                                           const Vocabulary& vocabulary) {
  RequireRecords(records);
  constexpr std::size_t kGroups = std::max(kNumCategories, kNumShapes);
  std::array<std::size_t, kGroups> counts{};
  std::array<std::size_t, kGroups> hits{};
  for (const PredictionRecord& r : records) {
    const BlockMetadata m = vocabulary.Metadata(r.truth);
    const auto g = grouping == Grouping::kCategory ? static_cast<std::size_t>(m.category)
                                                   : static_cast<std::size_t>(m.shape);
    ++counts[g];
    hits[g] += r.HitAt(x);
  }
  std::vector<GroupAccuracy> rows;
  const std::size_t groups = grouping == Grouping::kCategory ? kNumCategories : kNumShapes;
  for (std::size_t g = 0; g < groups; ++g) {
    if (counts[g] == 0) continue;
    GroupAccuracy row;
    row.group = std::string(grouping == Grouping::kCategory
                                ? CategoryName(static_cast<BlockCategory>(g))
                                : ShapeName(static_cast<BlockShape>(g)));
    row.count = counts[g];
    row.share = static_cast<double>(counts[g]) / static_cast<double>(records.size());
    row.accuracy = static_cast<double>(hits[g]) / static_cast<double>(counts[g]);
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string FormatAccuracyGrid(const AccuracyGrid& grid) {
  std::string out = fmt::format("{:<8}", "n");
  for (std::size_t x : grid.xs) out += fmt::format("{:>9}", fmt::format("top-{}", x));
  out += '\n';
  for (std::size_t i = 0; i < grid.orders.size(); ++i) {
    out += fmt::format("{:<8}", fmt::format("{}-gram", grid.orders[i]));
    for (double a : grid.accuracy[i]) out += fmt::format("{:>8.2f}%", 100.0 * a);
    out += '\n';
  }
  return out;
}

std::string FormatGroupTable(std::span<const GroupAccuracy> rows, std::string_view title) {
  std::string out = fmt::format("{:<16}{:>10}{:>12}{:>10}\n", title, "count",
                                "occurrence", "accuracy");
  for (const GroupAccuracy& r : rows) {
    out += fmt::format("{:<16}{:>10}{:>11.2f}%{:>9.2f}%\n", r.group, r.count,
                       100.0 * r.share, 100.0 * r.accuracy);
  }
  return out;
}

double PercentBugsFound(std::size_t found, std::size_t total) {
  if (total == 0) throw Error(ErrorCode::kZeroTotal, "program has no known bugs");
  if (found > total) {
    throw Error(ErrorCode::kInvalidArgument,
                fmt::format("found {} of only {} bugs", found, total));
  }
  return 100.0 * static_cast<double>(found) / static_cast<double>(total);
}

std::vector<GroundTruthBug> ReadGroundTruth(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw Error(ErrorCode::kIo, fmt::format("cannot open '{}'", path.string()));
  }
  std::vector<GroundTruthBug> bugs;
  std::string line;
  for (int number = 1; std::getline(in, line); ++number) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    GroundTruthBug bug;
    const auto first = line.find('\t');
    const auto second = first == std::string::npos ? first : line.find('\t', first + 1);
    if (second == std::string::npos || line.find('\t', second + 1) != std::string::npos) {
      throw Error(ErrorCode::kInvalidArgument,
                  fmt::format("{}:{}: expected program_id, bug_id and block_id",
                              path.string(), number));
    }
    bug.program_id = line.substr(0, first);
    bug.bug_id = line.substr(first + 1, second - first - 1);
    bug.block_id = line.substr(second + 1);
    bugs.push_back(std::move(bug));
  }
  return bugs;
}

SelectionScore ScoreSelection(const BugReport& report,
                              std::span<const GroundTruthBug> program_bugs) {
  std::unordered_multimap<std::string, std::string> bugs_by_block;
  std::set<std::string> all_bugs;
  for (const GroundTruthBug& b : program_bugs) {
    bugs_by_block.emplace(b.block_id, b.bug_id);
    all_bugs.insert(b.bug_id);
  }
  SelectionScore score;
  score.total_bugs = all_bugs.size();
  score.selected = report.sequences.size();
  std::set<std::string> found;
  for (const SuspiciousSequence& s : report.sequences) {
    bool touches = false;
    for (const std::string& block : s.block_ids) {
      if (block.empty()) continue;
      auto [begin, end] = bugs_by_block.equal_range(block);
      for (auto it = begin; it != end; ++it) {
        touches = true;
        found.insert(it->second);
      }
    }
    score.with_bug += touches;
  }
  score.bugs_found = found.size();
  score.precision = score.selected == 0 ? 0.0
                                        : static_cast<double>(score.with_bug) /
                                              static_cast<double>(score.selected);
  score.percent_found = PercentBugsFound(score.bugs_found, score.total_bugs);
  return score;
}

std::string FormatBugEvalRecord(const BugEvalRecord& record) {
  auto selection = [](const SelectionScore& s) {
    nlohmann::ordered_json j;
    j["selected"] = s.selected;
    j["with_bug"] = s.with_bug;
    j["precision"] = s.precision;
    j["bugs_found"] = s.bugs_found;
    j["percent_found"] = s.percent_found;
    return j;
  };
  nlohmann::ordered_json j;
  j["program"] = record.program_id;
  j["total_bugs"] = record.bottom.total_bugs;
  j["bottom"] = selection(record.bottom);
  j["random"] = selection(record.random);
  return j.dump();
}

}  // namespace scratchlm
