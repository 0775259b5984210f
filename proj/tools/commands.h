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

#ifndef SCRATCHLM_TOOLS_COMMANDS_H_
#define SCRATCHLM_TOOLS_COMMANDS_H_

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "scratchlm/bug_finder.h"
#include "scratchlm/statistics.h"
#include "scratchlm/tokenizer.h"
#include "scratchlm/vocabulary.h"

namespace scratchlm::tools {

// Options shared by every subcommand.
struct GlobalOptions {
  std::filesystem::path vocab;  // empty: the bundled block table
  unsigned threads = 0;         // 0: hardware concurrency
};

struct TokenizeCommand {
  std::vector<std::filesystem::path> inputs;  // .sb3 files or directories
  std::filesystem::path manifest;
  std::string split = "all";
  std::filesystem::path out = "-";
  bool sprite_markers = false;
  bool procedures_first = false;
  bool filter = false;
  std::size_t min_blocks = kDefaultMinBlocks;
  bool include_remixes = false;
  bool strict = false;
};

struct CorpusFilterCommand {
  std::filesystem::path manifest;
  std::filesystem::path out;
  std::size_t min_blocks = kDefaultMinBlocks;
  bool include_remixes = false;
};

struct TrainCommand {
  int order = 4;
  std::filesystem::path in;
  std::filesystem::path out;
  bool reachable_only = false;
};

struct CompleteCommand {
  std::filesystem::path model;
  std::string context;
  std::size_t top = 10;
  bool json = false;
};

struct ScoreCommand {
  std::filesystem::path model;
  std::filesystem::path in;     // token streams to evaluate
  std::string tokens;           // or a single token sequence
  std::filesystem::path out = "-";
  std::size_t top = 10;
};

struct EvalCompletionCommand {
  std::filesystem::path train;
  std::filesystem::path eval;
  std::filesystem::path records;  // score existing prediction records instead
  std::vector<int> orders{1, 2, 3, 4};
  std::vector<std::size_t> tops{1, 2, 3, 5, 10};
  int group_order = 0;  // 0: the largest order
  std::size_t group_top = 3;
  std::filesystem::path records_out;  // directory for per-order records
  bool json = false;
};

struct FindBugsCommand {
  std::filesystem::path model;
  std::vector<std::filesystem::path> programs;
  int length = kDefaultWindowLength;
  std::size_t bottom = kDefaultBottomK;
  std::uint64_t min_token_count = 0;
  bool allow_short = false;
  bool json = false;
};

struct EvalBugsCommand {
  std::filesystem::path model;
  std::vector<std::filesystem::path> references;  // train instead of --model
  int order = kDefaultReferenceOrder;
  std::vector<std::filesystem::path> programs;
  std::filesystem::path truth;
  int length = kDefaultWindowLength;
  std::size_t bottom = kDefaultBottomK;
  std::uint64_t seed = 1;
  std::string alternative = "two-sided";
  bool continuity_correction = false;
  bool json = false;
};

struct FetchCommand {
  std::vector<std::string> ids;
  std::filesystem::path ids_file;
  std::filesystem::path out;
  std::string api_base;
  std::string projects_base;
  int min_interval_ms = -1;
};

// Each returns the process exit code. Errors are thrown as scratchlm::Error.
int RunTokenize(const GlobalOptions& global, const TokenizeCommand& command);
int RunCorpusFilter(const GlobalOptions& global, const CorpusFilterCommand& command);
int RunTrain(const GlobalOptions& global, const TrainCommand& command);
int RunComplete(const GlobalOptions& global, const CompleteCommand& command);
int RunScore(const GlobalOptions& global, const ScoreCommand& command);
int RunEvalCompletion(const GlobalOptions& global, const EvalCompletionCommand& command);
int RunFindBugs(const GlobalOptions& global, const FindBugsCommand& command);
int RunEvalBugs(const GlobalOptions& global, const EvalBugsCommand& command);
int RunFetch(const GlobalOptions& global, const FetchCommand& command);

}  // namespace scratchlm::tools

#endif  // SCRATCHLM_TOOLS_COMMANDS_H_
