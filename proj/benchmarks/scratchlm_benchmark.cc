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

#include <random>
#include <vector>

#include <benchmark/benchmark.h>

#include "scratchlm/bug_finder.h"
#include "scratchlm/completion.h"
#include "scratchlm/model_io.h"
#include "scratchlm/ngram_counts.h"
#include "scratchlm/ngram_model.h"
#include "scratchlm/project.h"
#include "scratchlm/tokenizer.h"
#include "scratchlm/vocabulary.h"
#include "scratchlm/zip.h"

namespace scratchlm {
namespace {

using Unit = std::vector<TokenId>;

const std::size_t kV = Vocabulary::Default().size();

// Script-shaped units with Zipf-distributed blocks.
std::vector<Unit> Corpus(std::size_t tokens, std::uint32_t seed = 1) {
  std::mt19937 rng(seed);
  std::vector<double> weights(kV - kNumReservedTokens);
  for (std::size_t i = 0; i < weights.size(); ++i) weights[i] = 1.0 / static_cast<double>(i + 1);
  std::discrete_distribution<TokenId> block(weights.begin(), weights.end());
  std::uniform_int_distribution<int> length(2, 20);
  std::vector<Unit> units;
  for (std::size_t total = 0; total < tokens;) {
    Unit u{kBeginScript};
    for (int i = length(rng); i > 0; --i) u.push_back(kNumReservedTokens + block(rng));
    u.push_back(kEndScript);
    total += u.size();
    units.push_back(std::move(u));
  }
  return units;
}

const NgramModel& Model(int order) {
  static const std::vector<NgramModel> models = [] {
    std::vector<NgramModel> m;
    const auto corpus = Corpus(200000);
    for (int n = 1; n <= 6; ++n) m.push_back(NgramModel::Fit(CountNgrams(corpus, n, kV)));
    return m;
  }();
  return models[static_cast<std::size_t>(order - 1)];
}

void BM_CountNgrams(benchmark::State& state) {
  const auto corpus = Corpus(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(CountNgrams(corpus, static_cast<int>(state.range(1)), kV));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_CountNgrams)->ArgsProduct({{10000, 100000}, {2, 4}})->Unit(benchmark::kMillisecond);

void BM_Fit(benchmark::State& state) {
  const NgramCounts counts = CountNgrams(Corpus(static_cast<std::size_t>(state.range(0))),
                                         static_cast<int>(state.range(1)), kV);
  for (auto _ : state) benchmark::DoNotOptimize(NgramModel::Fit(counts));
}
BENCHMARK(BM_Fit)->ArgsProduct({{10000, 100000}, {2, 4}})->Unit(benchmark::kMillisecond);

void BM_Probability(benchmark::State& state) {
  const NgramModel& model = Model(static_cast<int>(state.range(0)));
  const auto queries = Corpus(20000, 2);
  std::size_t u = 0, i = 0;
  for (auto _ : state) {
    const Unit& unit = queries[u];
    benchmark::DoNotOptimize(model.Probability(ExtractContext(unit, i, model.order()), unit[i]));
    if (++i == unit.size()) {
      i = 0;
      u = (u + 1) % queries.size();
    }
  }
}
BENCHMARK(BM_Probability)->DenseRange(1, 6);

void BM_Complete(benchmark::State& state) {
  const NgramModel& model = Model(static_cast<int>(state.range(0)));
  const auto queries = Corpus(20000, 3);
  std::size_t u = 0;
  for (auto _ : state) {
    const Unit& unit = queries[u];
    benchmark::DoNotOptimize(
        Complete(model, ExtractContext(unit, unit.size() / 2, model.order()), 10));
    u = (u + 1) % queries.size();
  }
}
BENCHMARK(BM_Complete)->DenseRange(1, 4);

void BM_RankSuspicious(benchmark::State& state) {
  const NgramModel& model = Model(3);
  std::vector<ScriptStream> program;
  for (const Unit& u : Corpus(2000, 4)) {
    ScriptStream s;
    s.tokens = u;
    s.block_ids.assign(u.size(), "");
    s.reachable = true;
    s.script_index = static_cast<int>(program.size());
    program.push_back(std::move(s));
  }
  const auto candidates = ExtractSequences(program, static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(RankSuspicious(model, candidates, 10));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(candidates.size()));
}
BENCHMARK(BM_RankSuspicious)->DenseRange(3, 6);

void BM_SerializeModel(benchmark::State& state) {
  const NgramModel& model = Model(4);
  for (auto _ : state) benchmark::DoNotOptimize(SerializeModel(model));
}
BENCHMARK(BM_SerializeModel)->Unit(benchmark::kMillisecond);

void BM_DeserializeModel(benchmark::State& state) {
  const std::string bytes = SerializeModel(Model(4));
  for (auto _ : state) benchmark::DoNotOptimize(DeserializeModel(bytes));
}
BENCHMARK(BM_DeserializeModel)->Unit(benchmark::kMillisecond);

// A project.json with `scripts` scripts of `length` stacked blocks each.
std::string SyntheticProjectJson(int scripts, int length) {
  static const char* kOpcodes[] = {"motion_movesteps", "looks_say", "control_wait",
                                   "motion_turnright", "looks_nextcostume"};
  std::string blocks;
  int id = 0;
  for (int s = 0; s < scripts; ++s) {
    for (int i = 0; i < length; ++i, ++id) {
      const bool first = i == 0;
      const bool last = i + 1 == length;
      if (!blocks.empty()) blocks += ',';
      blocks += "\"b" + std::to_string(id) + "\":{\"opcode\":\"" +
                (first ? std::string("event_whenflagclicked") : kOpcodes[id % 5]) +
                "\",\"next\":" + (last ? "null" : "\"b" + std::to_string(id + 1) + "\"") +
                ",\"parent\":" + (first ? "null" : "\"b" + std::to_string(id - 1) + "\"") +
                ",\"inputs\":{},\"fields\":{},\"shadow\":false,\"topLevel\":" +
                (first ? "true,\"x\":0,\"y\":0" : "false") + "}";
    }
  }
  return R"({"targets":[{"isStage":true,"name":"Stage","blocks":{}},)"
         R"({"isStage":false,"name":"Sprite1","blocks":{)" +
         blocks + "}}]}";
}

void BM_TokenizeArchive(benchmark::State& state) {
  const std::string archive =
      WriteZip({{"project.json", SyntheticProjectJson(static_cast<int>(state.range(0)), 12)}});
  for (auto _ : state) benchmark::DoNotOptimize(TokenizeArchive(archive, "p", false));
  state.SetItemsProcessed(state.iterations() * state.range(0) * 12);
}
BENCHMARK(BM_TokenizeArchive)->Arg(10)->Arg(100);

}  // namespace
}  // namespace scratchlm

BENCHMARK_MAIN();
