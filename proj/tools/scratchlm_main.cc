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

// scratchlm: n-gram code completion and bug finding for Scratch programs.

#include <exception>
#include <functional>
#include <iostream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "commands.h"
#include "scratchlm/error.h"

using ::scratchlm::tools::CompleteCommand;
using ::scratchlm::tools::CorpusFilterCommand;
using ::scratchlm::tools::EvalBugsCommand;
using ::scratchlm::tools::EvalCompletionCommand;
using ::scratchlm::tools::FetchCommand;
using ::scratchlm::tools::FindBugsCommand;
using ::scratchlm::tools::GlobalOptions;
using ::scratchlm::tools::ScoreCommand;
using ::scratchlm::tools::TokenizeCommand;
using ::scratchlm::tools::TrainCommand;
using ::scratchlm::tools::RunComplete;
using ::scratchlm::tools::RunCorpusFilter;
using ::scratchlm::tools::RunEvalBugs;
using ::scratchlm::tools::RunEvalCompletion;
using ::scratchlm::tools::RunFetch;
using ::scratchlm::tools::RunFindBugs;
using ::scratchlm::tools::RunScore;
using ::scratchlm::tools::RunTokenize;
using ::scratchlm::tools::RunTrain;

namespace {

void PrintError(std::string_view code, std::string_view message) {
  std::cerr << nlohmann::ordered_json{{"error", code}, {"message", message}}.dump() << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"N-gram code completion and bug finding for Scratch programs."};
  app.require_subcommand(1);
  GlobalOptions global;
  app.add_option("--vocab", global.vocab, "Block table (TSV) replacing the bundled one")
      ->check(CLI::ExistingFile);
  app.add_option("--threads", global.threads, "Worker threads (0: all cores)");

  std::function<int()> run;

  TokenizeCommand tokenize;
  auto* t = app.add_subcommand("tokenize", "Turn .sb3 projects into a token-stream file");
  t->add_option("inputs", tokenize.inputs, ".sb3 files or directories of them");
  t->add_option("--manifest", tokenize.manifest, "Corpus manifest (TSV)")
      ->check(CLI::ExistingFile);
  t->add_option("--split", tokenize.split, "Manifest partition to read")
      ->check(CLI::IsMember({"all", "train", "eval"}));
  t->add_option("-o,--out", tokenize.out, "Output file ('-' for stdout)");
  t->add_flag("--sprite-markers", tokenize.sprite_markers, "Emit BEGIN_SPRITE/END_SPRITE");
  t->add_flag("--procedures-first", tokenize.procedures_first,
              "Order procedure definitions before other scripts");
  t->add_flag("--filter", tokenize.filter, "Apply the corpus filter");
  t->add_option("--min-blocks", tokenize.min_blocks, "Corpus filter block threshold");
  t->add_flag("--include-remixes", tokenize.include_remixes, "Keep remixes when filtering");
  t->add_flag("--strict", tokenize.strict, "Fail on the first unreadable project");
  t->callback([&] { run = [&] { return RunTokenize(global, tokenize); }; });

  CorpusFilterCommand corpus_filter;
  auto* cf = app.add_subcommand("corpus-filter", "Drop small projects and remixes from a manifest");
  cf->add_option("--manifest", corpus_filter.manifest, "Input manifest")
      ->required()
      ->check(CLI::ExistingFile);
  cf->add_option("-o,--out", corpus_filter.out, "Output manifest")->required();
  cf->add_option("--min-blocks", corpus_filter.min_blocks, "Minimum block count");
  cf->add_flag("--include-remixes", corpus_filter.include_remixes, "Keep remixes");
  cf->callback([&] { run = [&] { return RunCorpusFilter(global, corpus_filter); }; });

  TrainCommand train;
  auto* tr = app.add_subcommand("train", "Train an n-gram model on token streams");
  tr->add_option("-n,--order", train.order, "Model order")->check(CLI::Range(1, 8));
  tr->add_option("--in", train.in, "Token-stream file or directory of *.streams")
      ->required()
      ->check(CLI::ExistingPath);
  tr->add_option("-o,--out", train.out, "Model file")->required();
  tr->add_flag("--reachable-only", train.reachable_only, "Skip loose scripts");
  tr->callback([&] { run = [&] { return RunTrain(global, train); }; });

  CompleteCommand complete;
  auto* co = app.add_subcommand("complete", "Suggest the next block for a context");
  co->add_option("--model", complete.model, "Model file")->required()->check(CLI::ExistingFile);
  co->add_option("--context", complete.context, "Token names or ids, space or comma separated");
  co->add_option("--top", complete.top, "Number of suggestions")->check(CLI::PositiveNumber);
  co->add_flag("--json", complete.json, "Line-delimited JSON output");
  co->callback([&] { run = [&] { return RunComplete(global, complete); }; });

  ScoreCommand score;
  auto* sc = app.add_subcommand(
      "score", "Write prediction records for token streams, or score one sequence");
  sc->add_option("--model", score.model, "Model file")->required()->check(CLI::ExistingFile);
  auto* sc_in = sc->add_option("--in", score.in, "Token-stream file or directory")
                    ->check(CLI::ExistingPath);
  auto* sc_tokens = sc->add_option("--tokens", score.tokens, "Print the log-probability of this sequence");
  sc_in->excludes(sc_tokens);
  sc->add_option("-o,--out", score.out, "Prediction records ('-' for stdout)");
  sc->add_option("--top", score.top, "Suggestions kept per record")->check(CLI::PositiveNumber);
  sc->callback([&] {
    if (score.in.empty() && score.tokens.empty()) {
      throw CLI::RequiredError("--in or --tokens");
    }
    run = [&] { return RunScore(global, score); };
  });

  EvalCompletionCommand eval_completion;
  auto* ec = app.add_subcommand("eval-completion", "Top-x completion accuracy grid");
  ec->add_option("--train", eval_completion.train, "Training token streams")
      ->check(CLI::ExistingPath);
  ec->add_option("--eval", eval_completion.eval, "Evaluation token streams")
      ->check(CLI::ExistingPath);
  ec->add_option("--records", eval_completion.records,
                 "Score existing prediction records instead")
      ->check(CLI::ExistingFile);
  ec->add_option("--orders", eval_completion.orders, "Model orders")
      ->delimiter(',')
      ->check(CLI::Range(1, 8));
  ec->add_option("--top", eval_completion.tops, "Values of x")
      ->delimiter(',')
      ->check(CLI::PositiveNumber);
  ec->add_option("--group-order", eval_completion.group_order,
                 "Order for the category/shape breakdown (default: largest)");
  ec->add_option("--group-top", eval_completion.group_top, "x for the breakdown")
      ->check(CLI::PositiveNumber);
  ec->add_option("--records-out", eval_completion.records_out,
                 "Directory for per-order prediction records");
  ec->add_flag("--json", eval_completion.json, "Line-delimited JSON output");
  ec->callback([&] { run = [&] { return RunEvalCompletion(global, eval_completion); }; });

  FindBugsCommand find_bugs;
  auto* fb = app.add_subcommand("find-bugs", "Report the least probable block sequences");
  fb->add_option("--model", find_bugs.model, "Reference model")
      ->required()
      ->check(CLI::ExistingFile);
  fb->add_option("programs", find_bugs.programs, ".sb3 programs")
      ->required()
      ->check(CLI::ExistingFile);
  fb->add_option("-L,--length", find_bugs.length, "Window length")->check(CLI::PositiveNumber);
  fb->add_option("-k,--bottom", find_bugs.bottom, "Windows reported")->check(CLI::PositiveNumber);
  fb->add_option("--min-token-count", find_bugs.min_token_count,
                 "Drop blocks seen fewer times in training");
  fb->add_flag("--allow-short", find_bugs.allow_short, "Score scripts shorter than L whole");
  fb->add_flag("--json", find_bugs.json, "Line-delimited JSON output");
  fb->callback([&] { run = [&] { return RunFindBugs(global, find_bugs); }; });

  EvalBugsCommand eval_bugs;
  auto* eb = app.add_subcommand("eval-bugs", "Bottom-k versus random selection on labeled programs");
  auto* eb_model = eb->add_option("--model", eval_bugs.model, "Reference model")
                       ->check(CLI::ExistingFile);
  auto* eb_refs = eb->add_option("--references", eval_bugs.references,
                                 "Reference solutions (.sb3 files or directories)")
                      ->check(CLI::ExistingPath);
  eb_model->excludes(eb_refs);
  eb->add_option("-n,--order", eval_bugs.order, "Order when training on --references")
      ->check(CLI::Range(1, 8));
  eb->add_option("programs", eval_bugs.programs, "Student programs")
      ->required()
      ->check(CLI::ExistingPath);
  eb->add_option("--truth", eval_bugs.truth, "Ground truth TSV: program, bug, block id")
      ->required()
      ->check(CLI::ExistingFile);
  eb->add_option("-L,--length", eval_bugs.length, "Window length")->check(CLI::PositiveNumber);
  eb->add_option("-k,--bottom", eval_bugs.bottom, "Windows selected")->check(CLI::PositiveNumber);
  eb->add_option("--seed", eval_bugs.seed, "Random baseline seed");
  eb->add_option("--alternative", eval_bugs.alternative, "Mann-Whitney alternative")
      ->check(CLI::IsMember({"two-sided", "greater", "less"}));
  eb->add_flag("--continuity-correction", eval_bugs.continuity_correction,
               "Mann-Whitney continuity correction");
  eb->add_flag("--json", eval_bugs.json, "Line-delimited JSON output");
  eb->callback([&] {
    if (eval_bugs.model.empty() && eval_bugs.references.empty()) {
      throw CLI::RequiredError("--model or --references");
    }
    run = [&] { return RunEvalBugs(global, eval_bugs); };
  });

  FetchCommand fetch;
  auto* fe = app.add_subcommand("fetch", "Download projects through the Scratch REST API");
  fe->add_option("--ids", fetch.ids, "Project ids")->delimiter(',');
  fe->add_option("--ids-file", fetch.ids_file, "File with one project id per line")
      ->check(CLI::ExistingFile);
  fe->add_option("-o,--out", fetch.out, "Output directory")->required();
  fe->add_option("--api-base", fetch.api_base, "Metadata endpoint (env SCRATCHLM_API_BASE)");
  fe->add_option("--projects-base", fetch.projects_base,
                 "Project endpoint (env SCRATCHLM_PROJECTS_BASE)");
  fe->add_option("--min-interval-ms", fetch.min_interval_ms, "Delay between requests");
  fe->callback([&] { run = [&] { return RunFetch(global, fetch); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }
  try {
    return run();
  } catch (const scratchlm::Error& e) {
    PrintError(scratchlm::ErrorCodeName(e.code()), e.what());
  } catch (const std::exception& e) {
    PrintError("Internal", e.what());
  }
  return 1;
}
