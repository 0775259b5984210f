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
#include <cmath>

#include <gtest/gtest.h>

#include "support/sb3_builder.h"
#include "support/test_util.h"

namespace scratchlm {
namespace {

using ::scratchlm::testing::ProjectBuilder;
using ::scratchlm::testing::RandomCorpus;
using ::scratchlm::testing::TargetBuilder;
using ::scratchlm::testing::Tokens;
using ::scratchlm::testing::Unit;

std::string BlockId(int script, std::size_t i) {
  return "s" + std::to_string(script) + "b" + std::to_string(i);
}

ScriptStream Script(const Unit& tokens, bool reachable = true, int index = 0,
                    const std::string& sprite = "Cat") {
  ScriptStream s;
  s.tokens = tokens;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    s.block_ids.push_back(IsMarker(tokens[i]) ? "" : BlockId(index, i));
  }
  s.sprite = sprite;
  s.script_index = index;
  s.reachable = reachable;
  return s;
}

TEST(ExtractSequencesTest, SlidingWindows) {
  const auto s = Script(Tokens("BEGIN_SCRIPT event_whenflagclicked motion_movesteps "
                               "looks_say looks_hide END_SCRIPT"));
  const auto windows = ExtractSequences(std::vector<ScriptStream>{s}, 4);
  ASSERT_EQ(windows.size(), 3u);
  for (std::size_t i = 0; i < 3; ++i) {
    EXPECT_EQ(windows[i].offset, i);
    EXPECT_EQ(windows[i].tokens, Unit(s.tokens.begin() + i, s.tokens.begin() + i + 4));
    EXPECT_EQ(windows[i].block_ids.size(), 4u);
  }
}

TEST(ExtractSequencesTest, LooseCodeIsExcluded) {
  ProjectBuilder p;
  TargetBuilder& cat = p.AddSprite("Cat");
  cat.Chain(cat.Hat("motion_movesteps"), {"motion_turnright", "looks_say", "looks_hide"});
  const auto project = TokenizeArchive(p.Archive(), "p", false);
  EXPECT_TRUE(ExtractSequences(project, 3).empty());
}

TEST(ExtractSequencesTest, TwoReachableScripts) {
  ProjectBuilder p;
  TargetBuilder& cat = p.AddSprite("Cat");
  cat.Chain(cat.Hat("event_whenflagclicked"), {"looks_show", "looks_hide"});  // 5 tokens
  cat.Chain(cat.Hat("motion_movesteps"), {"motion_turnright"});              // loose
  TargetBuilder& dog = p.AddSprite("Dog");
  dog.Chain(dog.Hat("event_whenkeypressed"),
            {"sound_play", "looks_show", "looks_hide", "motion_movesteps"});  // 7 tokens
  const auto project = TokenizeArchive(p.Archive(), "p", false);
  const auto windows = ExtractSequences(project, 3);
  ASSERT_EQ(windows.size(), 8u);
  EXPECT_EQ(windows[0].sprite, "Cat");
  EXPECT_EQ(windows[3].sprite, "Dog");
  EXPECT_EQ(windows[3].sprite_index, 1);  // the Stage has no scripts
  EXPECT_EQ(windows[3].block_ids[1], project.sprites[2].scripts[0].block_ids[1]);
}

TEST(ExtractSequencesTest, ShortScripts) {
  const std::vector<ScriptStream> scripts{
      Script(Tokens("BEGIN_SCRIPT event_whenflagclicked END_SCRIPT"))};
  EXPECT_TRUE(ExtractSequences(scripts, 4).empty());
  const auto windows = ExtractSequences(scripts, 4, {.allow_short = true});
  ASSERT_EQ(windows.size(), 1u);
  EXPECT_EQ(windows[0].tokens.size(), 3u);
}

TEST(ExtractSequencesTest, LongerWindowsAreFewer) {
  std::vector<ScriptStream> scripts;
  int i = 0;
  for (const Unit& u : RandomCorpus(500, 30, 3)) scripts.push_back(Script(u, i % 3 != 0, i++));
  std::size_t previous = SIZE_MAX;
  for (int l = 1; l <= 8; ++l) {
    const std::size_t n = ExtractSequences(scripts, l).size();
    EXPECT_LE(n, previous);
    previous = n;
  }
}

TEST(RankSuspiciousTest, BottomKIsExactlyTheKLowest) {
  const auto training = RandomCorpus(3000, 40, 1);
  const NgramModel m = NgramModel::Fit(CountNgrams(training, 3, 142));
  std::vector<ScriptStream> program;
  int i = 0;
  for (const Unit& u : RandomCorpus(400, 80, 2)) program.push_back(Script(u, true, i++));
  const auto candidates = ExtractSequences(program, 4);
  for (std::size_t k : {1u, 10u, 50u}) {
    const BugReport report = RankSuspicious(m, candidates, k, 3);
    ASSERT_EQ(report.sequences.size(), k);
    std::vector<double> all;
    for (const auto& c : candidates) all.push_back(m.SequenceLogProb(c.tokens));
    std::sort(all.begin(), all.end());
    for (std::size_t j = 0; j < k; ++j) {
      EXPECT_EQ(report.sequences[j].logprob, all[j]);
      EXPECT_TRUE(std::isfinite(report.sequences[j].logprob));
    }
  }
  EXPECT_EQ(RankSuspicious(m, candidates, 100000).sequences.size(), candidates.size());
  EXPECT_TRUE(RankSuspicious(m, {}, 10).sequences.empty());
}

TEST(RankSuspiciousTest, IdenticalCandidatesRankByLocation) {
  const NgramModel m = NgramModel::Fit(CountNgrams(RandomCorpus(500, 20, 5), 3, 142));
  const Unit tokens = Tokens("BEGIN_SCRIPT event_whenflagclicked looks_say END_SCRIPT");
  std::vector<ScriptStream> scripts;
  for (int i = 5; i >= 0; --i) scripts.push_back(Script(tokens, true, i, i % 2 ? "A" : "B"));
  const BugReport report = RankSuspicious(m, ExtractSequences(scripts, 4), 4);
  ASSERT_EQ(report.sequences.size(), 4u);
  for (std::size_t j = 1; j < 4; ++j) {
    const auto& a = report.sequences[j - 1];
    const auto& b = report.sequences[j];
    EXPECT_EQ(a.logprob, b.logprob);
    EXPECT_LT(std::tie(a.sprite_index, a.script_index, a.offset),
              std::tie(b.sprite_index, b.script_index, b.offset));
  }
}

TEST(RankSuspiciousTest, SeededAnomalyIsFound) {
  const auto training = RandomCorpus(5000, 25, 8);
  std::vector<ScriptStream> refs;
  for (const Unit& u : training) refs.push_back(Script(u));
  const NgramModel m = TrainReferenceModel(refs, 3);
  // Copy training scripts into a program and mutate one block to a token the
  // references never use.
  const TokenId unseen = Tokens("pen_stamp")[0];
  ASSERT_EQ(m.counts().Count(Ngram{unseen}), 0u);
  std::vector<ScriptStream> program;
  for (int i = 0; i < 12; ++i) program.push_back(Script(training[i], true, i));
  std::size_t target = 0;
  while (program[target].tokens.size() < 7) ++target;
  program[target].tokens[3] = unseen;
  const BugReport report = RankSuspicious(m, ExtractSequences(program, 4), 10);
  std::size_t containing = 0;
  for (const auto& s : report.sequences) {
    containing += std::count(s.tokens.begin(), s.tokens.end(), unseen) > 0;
  }
  EXPECT_EQ(containing, 4u);  // every window over the mutation
  EXPECT_NE(std::find(report.sequences[0].tokens.begin(), report.sequences[0].tokens.end(), unseen),
            report.sequences[0].tokens.end());
}

TEST(RandomSelectionTest, SeededAndSorted) {
  std::vector<ScriptStream> scripts;
  int i = 0;
  for (const Unit& u : RandomCorpus(400, 30, 6)) scripts.push_back(Script(u, true, i++));
  const auto candidates = ExtractSequences(scripts, 3);
  const BugReport a = RandomSelection(candidates, 10, 99);
  const BugReport b = RandomSelection(candidates, 10, 99);
  const BugReport c = RandomSelection(candidates, 10, 100);
  ASSERT_EQ(a.sequences.size(), 10u);
  bool differs = false;
  for (std::size_t j = 0; j < 10; ++j) {
    EXPECT_EQ(a.sequences[j].offset, b.sequences[j].offset);
    EXPECT_EQ(a.sequences[j].script_index, b.sequences[j].script_index);
    differs |= a.sequences[j].script_index != c.sequences[j].script_index ||
               a.sequences[j].offset != c.sequences[j].offset;
    if (j > 0) {
      EXPECT_LE(std::tie(a.sequences[j - 1].script_index, a.sequences[j - 1].offset),
                std::tie(a.sequences[j].script_index, a.sequences[j].offset));
    }
  }
  EXPECT_TRUE(differs);
  EXPECT_EQ(RandomSelection(candidates, 100000, 1).sequences.size(), candidates.size());
}

TEST(TrainReferenceModelTest, TwoSolutionsCoverTheClosedVocabulary) {
  ProjectBuilder p;
  TargetBuilder& cat = p.AddSprite("Cat");
  cat.Chain(cat.Hat("event_whenflagclicked"), {"control_forever"});
  cat.Chain(cat.Hat("looks_hide"), {"looks_show"});  // loose, not trained on
  const std::vector<TokenizedProject> refs{TokenizeArchive(p.Archive(), "a", false),
                                           TokenizeArchive(p.Archive(), "b", false)};
  const NgramModel m = TrainReferenceModel(refs);
  EXPECT_EQ(m.order(), 3);
  EXPECT_EQ(m.vocabulary_size(), 142u);
  EXPECT_EQ(m.counts().Count(Ngram(Tokens("looks_hide"))), 0u);
  for (TokenId w = 0; w < 142; ++w) EXPECT_GT(m.Probability(Tokens("looks_hide"), w), 0.0);
  // Self-scoring a training program is allowed.
  EXPECT_FALSE(RankSuspicious(m, ExtractSequences(refs[0], 3), 10).sequences.empty());
}

TEST(TrainReferenceModelTest, OnlyLooseCodeIsEmpty) {
  ProjectBuilder p;
  TargetBuilder& cat = p.AddSprite("Cat");
  cat.Chain(cat.Hat("looks_hide"), {"looks_show"});
  const std::vector<TokenizedProject> refs{TokenizeArchive(p.Archive(), "a", false)};
  EXPECT_SCRATCHLM_ERROR(TrainReferenceModel(refs), ErrorCode::kEmptyCorpus);
}

TEST(DropRareTokensTest, RemovesRareConcreteTokens) {
  const std::vector<Unit> training(3, Tokens("BEGIN_SCRIPT event_whenflagclicked looks_say END_SCRIPT"));
  const NgramCounts counts = CountNgrams(training, 2, 142);
  std::vector<ScriptStream> scripts{
      Script(Tokens("BEGIN_SCRIPT event_whenflagclicked pen_clear looks_say END_SCRIPT"))};
  DropRareTokens(scripts, counts, 0);
  EXPECT_EQ(scripts[0].tokens.size(), 5u);
  DropRareTokens(scripts, counts, 2);
  EXPECT_EQ(scripts[0].tokens, Tokens("BEGIN_SCRIPT event_whenflagclicked looks_say END_SCRIPT"));
  EXPECT_EQ(scripts[0].block_ids.size(), 4u);
  DropRareTokens(scripts, counts, 4);
  EXPECT_EQ(scripts[0].tokens, Tokens("BEGIN_SCRIPT END_SCRIPT"));
}

TEST(BugReportTest, Formatting) {
  const NgramModel m = NgramModel::Fit(CountNgrams(RandomCorpus(500, 20, 5), 3, 142));
  std::vector<ScriptStream> scripts{
      Script(Tokens("BEGIN_SCRIPT event_whenflagclicked looks_say looks_hide END_SCRIPT"))};
  BugReport report = RankSuspicious(m, ExtractSequences(scripts, 4), 10);
  report.program_id = "K6_S01";
  const std::string table = FormatBugReportTable(report, Vocabulary::Default());
  EXPECT_NE(table.find("Cat#0@1"), std::string::npos);
  EXPECT_NE(table.find("event_whenflagclicked looks_say"), std::string::npos);
  const std::string records = FormatBugReportRecords(report, Vocabulary::Default());
  EXPECT_EQ(std::count(records.begin(), records.end(), '\n'), 2);
  EXPECT_NE(records.find("\"program\":\"K6_S01\""), std::string::npos);
}

}  // namespace
}  // namespace scratchlm
