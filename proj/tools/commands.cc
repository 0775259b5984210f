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

#include "commands.h"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <iterator>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <thread>
#include <tuple>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "scratchlm/completion.h"
#include "scratchlm/error.h"
#include "scratchlm/fetch.h"
#include "scratchlm/manifest.h"
#include "scratchlm/metrics.h"
#include "scratchlm/model_io.h"
#include "scratchlm/ngram_counts.h"
#include "scratchlm/ngram_model.h"
#include "scratchlm/project.h"
#include "scratchlm/stream_file.h"

namespace scratchlm::tools {
namespace {

namespace fs = std::filesystem;
using Json = nlohmann::ordered_json;

const Vocabulary& LoadVocabulary(const GlobalOptions& global) {
  if (global.vocab.empty()) return Vocabulary::Default();
  static const Vocabulary vocabulary = Vocabulary::FromFile(global.vocab);
  return vocabulary;
}

unsigned ThreadCount(const GlobalOptions& global) {
  if (global.threads > 0) return global.threads;
  return std::max(1u, std::thread::hardware_concurrency());
}

void Report(const Json& record) { std::cerr << record.dump() << '\n'; }

void Warn(std::string_view message) { Report(Json{{"warning", message}}); }

std::string ReadBinaryFile(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, fmt::format("cannot open '{}'", path.string()));
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

// Writes to stdout for "-", otherwise to a file.
class Output {
 public:
  explicit Output(const fs::path& path) {
    if (path == "-") return;
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    file_.open(path, std::ios::binary);
    if (!file_) throw Error(ErrorCode::kIo, fmt::format("cannot write '{}'", path.string()));
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

// Runs fn(i) for i in [0, n) on up to `threads` workers.
template <typename Fn>
void ParallelFor(std::size_t n, unsigned threads, Fn fn) {
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, n));
  if (threads <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::jthread> workers;
  for (unsigned t = 0; t < threads; ++t) {
    workers.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) fn(i);
    });
  }
}

std::vector<fs::path> ExpandArchives(const std::vector<fs::path>& inputs) {
  std::vector<fs::path> archives;
  for (const fs::path& input : inputs) {
    if (!fs::is_directory(input)) {
      archives.push_back(input);
      continue;
    }
    std::vector<fs::path> found;
    for (const auto& entry : fs::directory_iterator(input)) {
      if (entry.is_regular_file() && entry.path().extension() == ".sb3") {
        found.push_back(entry.path());
      }
    }
    std::sort(found.begin(), found.end());
    archives.insert(archives.end(), found.begin(), found.end());
  }
  return archives;
}

TokenizedProject TokenizeFile(const fs::path& path, const Vocabulary& vocabulary,
                              bool is_remix = false) {
  TokenizeOptions options;
  options.vocabulary = &vocabulary;
  return TokenizeArchive(ReadBinaryFile(path), path.stem().string(), is_remix, options);
}

std::vector<ScriptStream> Flatten(const TokenizedProject& project) {
  std::vector<ScriptStream> scripts;
  for (const SpriteStreams& sprite : project.sprites) {
    scripts.insert(scripts.end(), sprite.scripts.begin(), sprite.scripts.end());
  }
  return scripts;
}

std::vector<ScriptStream> LoadScripts(const fs::path& path, const Vocabulary& vocabulary,
                                      bool reachable_only = false) {
  std::vector<ScriptStream> scripts;
  for (const StreamRecord& record : ReadStreamInputs(path, vocabulary)) {
    for (ScriptStream& s : record.Scripts()) {
      if (!reachable_only || s.reachable) scripts.push_back(std::move(s));
    }
  }
  return scripts;
}

NgramModel Train(std::span<const ScriptStream> scripts, int order,
                 const Vocabulary& vocabulary, unsigned threads) {
  std::vector<std::vector<TokenId>> units;
  units.reserve(scripts.size());
  for (const ScriptStream& s : scripts) units.push_back(s.tokens);
  if (units.empty()) throw Error(ErrorCode::kEmptyCorpus, "no scripts to train on");

  const std::size_t chunks = std::min<std::size_t>(threads, units.size());
  const std::size_t per_chunk = (units.size() + chunks - 1) / chunks;
  std::vector<std::optional<NgramCounts>> partial(chunks);
  ParallelFor(chunks, threads, [&](std::size_t c) {
    const std::size_t begin = c * per_chunk;
    const std::size_t end = std::min(units.size(), begin + per_chunk);
    if (begin >= end) return;
    partial[c] = CountNgrams(std::span(units).subspan(begin, end - begin), order,
                             vocabulary.size(), vocabulary.fingerprint());
  });
  std::optional<NgramCounts> total;
  for (auto& p : partial) {
    if (!p) continue;
    total = total ? MergeCounts(*total, *p) : std::move(*p);
  }
  return NgramModel::Fit(std::move(*total));
}

NgramModel LoadCompatibleModel(const fs::path& path, const Vocabulary& vocabulary) {
  NgramModel model = LoadModel(path);
  const std::uint64_t fingerprint = model.counts().vocabulary_fingerprint();
  if (model.vocabulary_size() != vocabulary.size() ||
      (fingerprint != 0 && fingerprint != vocabulary.fingerprint())) {
    throw Error(ErrorCode::kInvalidArgument,
                fmt::format("model '{}' was trained with a different block table",
                            path.string()));
  }
  return model;
}

Split ParseSplitName(const std::string& name) {
  if (name == "train") return Split::kTrain;
  if (name == "eval") return Split::kEval;
  return Split::kNone;
}

std::uint64_t Fnv1a(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace

int RunTokenize(const GlobalOptions& global, const TokenizeCommand& command) {
  const Vocabulary& vocabulary = LoadVocabulary(global);
  struct Input {
    std::string id;
    fs::path path;
    bool is_remix = false;
  };
  std::vector<Input> inputs;
  if (!command.manifest.empty()) {
    auto entries = ReadManifest(command.manifest);
    CheckPartitions(entries);
    if (command.split != "all") entries = SelectSplit(entries, ParseSplitName(command.split));
    for (const ManifestEntry& e : entries) inputs.push_back({e.id, e.path, e.is_remix});
  }
  for (const fs::path& path : ExpandArchives(command.inputs)) {
    inputs.push_back({path.stem().string(), path, false});
  }
  if (inputs.empty()) throw Error(ErrorCode::kInvalidArgument, "no input projects");

  TokenizeOptions options;
  options.sprite_markers = command.sprite_markers;
  options.procedures_first = command.procedures_first;
  options.vocabulary = &vocabulary;
  std::vector<std::optional<TokenizedProject>> projects(inputs.size());
  std::vector<std::exception_ptr> failures(inputs.size());
  ParallelFor(inputs.size(), ThreadCount(global), [&](std::size_t i) {
    try {
      projects[i] = TokenizeArchive(ReadBinaryFile(inputs[i].path), inputs[i].id,
                                    inputs[i].is_remix, options);
    } catch (...) {
      failures[i] = std::current_exception();
    }
  });

  Output out(command.out);
  out.stream() << StreamHeader(vocabulary) << '\n';
  std::size_t written = 0, filtered = 0, skipped = 0, extension_blocks = 0;
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    if (failures[i]) {
      if (command.strict) std::rethrow_exception(failures[i]);
      try {
        std::rethrow_exception(failures[i]);
      } catch (const Error& e) {
        Report(Json{{"warning", "skipped project"}, {"project", inputs[i].id},
                    {"error", ErrorCodeName(e.code())}, {"message", e.what()}});
      }
      ++skipped;
      continue;
    }
    const TokenizedProject& project = *projects[i];
    if (command.filter &&
        !FilterCorpus(project.meta, command.min_blocks, !command.include_remixes)) {
      ++filtered;
      continue;
    }
    WriteStreams(out.stream(), ToStreamRecords(project), vocabulary, /*with_header=*/false);
    extension_blocks += project.stats.extension_blocks;
    ++written;
  }
  Report(Json{{"projects", inputs.size()}, {"written", written}, {"filtered", filtered},
              {"skipped", skipped}, {"extension_blocks_dropped", extension_blocks}});
  return 0;
}

int RunCorpusFilter(const GlobalOptions& global, const CorpusFilterCommand& command) {
  const auto entries = ReadManifest(command.manifest);
  std::vector<std::optional<std::size_t>> block_counts(entries.size());
  ParallelFor(entries.size(), ThreadCount(global), [&](std::size_t i) {
    try {
      block_counts[i] = ParseProject(ReadBinaryFile(entries[i].path)).BlockNodeCount();
    } catch (const Error&) {
    }
  });
  std::vector<ManifestEntry> kept;
  std::size_t malformed = 0;
  const fs::path base = fs::absolute(command.out).parent_path();
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (!block_counts[i]) {
      Report(Json{{"warning", "unreadable project"}, {"project", entries[i].id}});
      ++malformed;
      continue;
    }
    ProjectMeta meta{entries[i].id, *block_counts[i], entries[i].is_remix};
    if (!FilterCorpus(meta, command.min_blocks, !command.include_remixes)) continue;
    ManifestEntry e = entries[i];
    e.path = fs::proximate(e.path, base);
    kept.push_back(std::move(e));
  }
  WriteManifest(command.out, kept);
  Report(Json{{"projects", entries.size()}, {"kept", kept.size()},
              {"rejected", entries.size() - kept.size() - malformed},
              {"unreadable", malformed}});
  return 0;
}

int RunTrain(const GlobalOptions& global, const TrainCommand& command) {
  const Vocabulary& vocabulary = LoadVocabulary(global);
  const auto scripts = LoadScripts(command.in, vocabulary, command.reachable_only);
  const NgramModel model = Train(scripts, command.order, vocabulary, ThreadCount(global));
  SaveModel(model, command.out);
  fmt::print("trained {}-gram model on {} scripts ({} tokens) -> {}\n", command.order,
             model.counts().units(), model.counts().total_tokens(), command.out.string());
  return 0;
}

int RunComplete(const GlobalOptions& global, const CompleteCommand& command) {
  const Vocabulary& vocabulary = LoadVocabulary(global);
  const NgramModel model = LoadCompatibleModel(command.model, vocabulary);
  const auto context = vocabulary.ParseTokens(command.context);
  bool new_script = false;
  const auto suggestions = Complete(model, context, command.top, &new_script);
  if (!command.json) {
    if (new_script) fmt::print("# END_SCRIPT ranked first; suggestions start a new script\n");
    fmt::print("{:>4}  {:>4}  {:<32} {}\n", "rank", "id", "block", "probability");
  }
  for (std::size_t i = 0; i < suggestions.size(); ++i) {
    const Suggestion& s = suggestions[i];
    if (command.json) {
      fmt::print("{}\n", Json{{"rank", i + 1}, {"id", s.token},
                              {"name", vocabulary.name(s.token)},
                              {"probability", s.probability},
                              {"new_script", new_script}}.dump());
    } else {
      fmt::print("{:>4}  {:>4}  {:<32} {:.6f}\n", i + 1, s.token, vocabulary.name(s.token),
                 s.probability);
    }
  }
  return 0;
}

int RunScore(const GlobalOptions& global, const ScoreCommand& command) {
  const Vocabulary& vocabulary = LoadVocabulary(global);
  const NgramModel model = LoadCompatibleModel(command.model, vocabulary);
  if (!command.tokens.empty()) {
    const auto tokens = vocabulary.ParseTokens(command.tokens);
    fmt::print("{:.10f}\n", model.SequenceLogProb(tokens));
    return 0;
  }
  const auto scripts = LoadScripts(command.in, vocabulary);
  const BatchResult result = BatchEvaluate(
      model, scripts, {.max_x = command.top, .threads = ThreadCount(global)});
  Output out(command.out);
  WritePredictionRecords(out.stream(), result.records);
  Json summary{{"predictions", result.records.size()},
               {"end_positions", result.end_positions},
               {"procedure_positions", result.procedure_positions}};
  if (!result.records.empty()) {
    summary["top1"] = TopXAccuracy(result.records, 1);
    summary[fmt::format("top{}", command.top)] = TopXAccuracy(result.records, command.top);
  }
  Report(summary);
  return 0;
}

namespace {

void PrintGroupTables(std::span<const PredictionRecord> records, std::size_t x, int order,
                      const Vocabulary& vocabulary, bool json) {
  for (Grouping grouping : {Grouping::kCategory, Grouping::kShape}) {
    const auto rows = AccuracyByGroup(records, grouping, x, vocabulary);
    const char* name = grouping == Grouping::kCategory ? "category" : "shape";
    if (!json) {
      fmt::print("\n{}", FormatGroupTable(rows, name));
      continue;
    }
    for (const GroupAccuracy& r : rows) {
      Json j{{"grouping", name}};
      if (order > 0) j["order"] = order;
      j["top"] = x;
      j["group"] = r.group;
      j["count"] = r.count;
      j["share"] = r.share;
      j["accuracy"] = r.accuracy;
      fmt::print("{}\n", j.dump());
    }
  }
}

}  // namespace

int RunEvalCompletion(const GlobalOptions& global, const EvalCompletionCommand& command) {
  const Vocabulary& vocabulary = LoadVocabulary(global);
  if (!command.records.empty()) {
    std::ifstream in(command.records);
    if (!in) {
      throw Error(ErrorCode::kIo, fmt::format("cannot open '{}'", command.records.string()));
    }
    const auto records = ReadPredictionRecords(in);
    for (std::size_t x : command.tops) {
      const double a = TopXAccuracy(records, x);
      if (command.json) {
        fmt::print("{}\n", Json{{"top", x}, {"accuracy", a},
                                {"predictions", records.size()}}.dump());
      } else {
        fmt::print("top-{:<3} {:>8.2f}%\n", x, 100.0 * a);
      }
    }
    PrintGroupTables(records, command.group_top, 0, vocabulary, command.json);
    return 0;
  }
  if (command.train.empty() || command.eval.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "--train and --eval (or --records) are required");
  }
  const auto train = LoadScripts(command.train, vocabulary);
  const auto eval = LoadScripts(command.eval, vocabulary);
  std::set<std::string> train_ids;
  for (const ScriptStream& s : train) train_ids.insert(s.project_id);
  for (const ScriptStream& s : eval) {
    if (train_ids.contains(s.project_id)) {
      throw Error(ErrorCode::kOverlappingPartitions,
                  fmt::format("project '{}' is in both the training and evaluation streams",
                              s.project_id));
    }
  }
  const int group_order = command.group_order > 0
                              ? command.group_order
                              : *std::max_element(command.orders.begin(), command.orders.end());
  std::size_t max_x = command.group_top;
  for (std::size_t x : command.tops) max_x = std::max(max_x, x);
  const unsigned threads = ThreadCount(global);

  AccuracyGrid grid{command.orders, command.tops, {}};
  std::vector<PredictionRecord> group_records;
  BatchResult last;
  for (int order : command.orders) {
    const NgramModel model = Train(train, order, vocabulary, threads);
    BatchResult result = BatchEvaluate(model, eval, {.max_x = max_x, .threads = threads});
    std::vector<double> row;
    for (std::size_t x : command.tops) {
      row.push_back(TopXAccuracy(result.records, x));
      if (command.json) {
        fmt::print("{}\n", Json{{"order", order}, {"top", x}, {"accuracy", row.back()},
                                {"predictions", result.records.size()}}.dump());
      }
    }
    grid.accuracy.push_back(std::move(row));
    if (!command.records_out.empty()) {
      Output out(command.records_out / fmt::format("predictions_n{}.jsonl", order));
      WritePredictionRecords(out.stream(), result.records);
    }
    if (order == group_order) group_records = result.records;
    last = std::move(result);
  }
  if (!command.json) {
    fmt::print("{}", FormatAccuracyGrid(grid));
    fmt::print("\n{} predictions; excluded targets: {} END_SCRIPT, {} procedure definitions\n",
               last.records.size(), last.end_positions, last.procedure_positions);
  }
  if (!group_records.empty()) {
    if (!command.json) {
      fmt::print("\nBreakdown for the {}-gram model, top-{}:\n", group_order, command.group_top);
    }
    PrintGroupTables(group_records, command.group_top, group_order, vocabulary, command.json);
  }
  return 0;
}

namespace {

void WarnWindowLength(int length) {
  if (!IsEvaluatedWindowLength(length)) {
    Warn(fmt::format("window length {} is outside the evaluated range 3..6", length));
  }
}

}  // namespace

int RunFindBugs(const GlobalOptions& global, const FindBugsCommand& command) {
  const Vocabulary& vocabulary = LoadVocabulary(global);
  WarnWindowLength(command.length);
  const NgramModel model = LoadCompatibleModel(command.model, vocabulary);
  for (const fs::path& program : command.programs) {
    const TokenizedProject project = TokenizeFile(program, vocabulary);
    auto scripts = Flatten(project);
    if (command.min_token_count > 0) {
      DropRareTokens(scripts, model.counts(), command.min_token_count);
    }
    auto candidates = ExtractSequences(std::span<const ScriptStream>(scripts), command.length,
                                       {.allow_short = command.allow_short});
    const std::size_t total = candidates.size();
    BugReport report =
        RankSuspicious(model, std::move(candidates), command.bottom, ThreadCount(global));
    report.program_id = project.meta.id;
    report.window_length = command.length;
    if (command.json) {
      fmt::print("{}", FormatBugReportRecords(report, vocabulary));
    } else {
      fmt::print("{}: {} least probable of {} windows of length {}\n", report.program_id,
                 report.sequences.size(), total, command.length);
      fmt::print("{}\n", FormatBugReportTable(report, vocabulary));
    }
  }
  return 0;
}

int RunEvalBugs(const GlobalOptions& global, const EvalBugsCommand& command) {
  const Vocabulary& vocabulary = LoadVocabulary(global);
  WarnWindowLength(command.length);
  const unsigned threads = ThreadCount(global);

  std::optional<NgramModel> model;
  if (!command.model.empty()) {
    model = LoadCompatibleModel(command.model, vocabulary);
  } else {
    std::vector<TokenizedProject> references;
    for (const fs::path& path : ExpandArchives(command.references)) {
      references.push_back(TokenizeFile(path, vocabulary));
    }
    model = TrainReferenceModel(references, command.order, vocabulary);
  }
  const auto truth = ReadGroundTruth(command.truth);

  std::vector<double> bottom_precision, random_precision, bottom_found, random_found;
  double overlap_sum = 0;
  if (!command.json) {
    fmt::print("{:<16}{:>6}{:>12}{:>12}{:>12}{:>12}{:>9}\n", "program", "bugs", "bottom P@k",
               "bottom %", "random P@k", "random %", "overlap");
  }
  for (const fs::path& path : ExpandArchives(command.programs)) {
    const TokenizedProject project = TokenizeFile(path, vocabulary);
    const std::string& id = project.meta.id;
    std::vector<GroundTruthBug> bugs;
    std::copy_if(truth.begin(), truth.end(), std::back_inserter(bugs),
                 [&](const GroundTruthBug& b) { return b.program_id == id; });
    if (bugs.empty()) {
      throw Error(ErrorCode::kZeroTotal,
                  fmt::format("program '{}' has no ground-truth bugs", id));
    }
    const auto scripts = Flatten(project);
    const auto candidates = ExtractSequences(std::span(scripts), command.length);
    BugReport bottom = RankSuspicious(*model, candidates, command.bottom, threads);
    BugReport random = RandomSelection(candidates, command.bottom, command.seed ^ Fnv1a(id));
    bottom.program_id = random.program_id = id;

    BugEvalRecord record{id, ScoreSelection(bottom, bugs), ScoreSelection(random, bugs)};
    std::set<std::tuple<int, int, std::size_t>> picked;
    for (const auto& s : bottom.sequences) picked.insert({s.sprite_index, s.script_index, s.offset});
    std::size_t shared = 0;
    for (const auto& s : random.sequences) {
      shared += picked.contains({s.sprite_index, s.script_index, s.offset});
    }
    const double overlap =
        random.sequences.empty() ? 0.0
                                 : static_cast<double>(shared) /
                                       static_cast<double>(random.sequences.size());
    overlap_sum += overlap;

    bottom_precision.push_back(100.0 * record.bottom.precision);
    random_precision.push_back(100.0 * record.random.precision);
    bottom_found.push_back(record.bottom.percent_found);
    random_found.push_back(record.random.percent_found);
    if (command.json) {
      fmt::print("{}\n", FormatBugEvalRecord(record));
    } else {
      fmt::print("{:<16}{:>6}{:>12.1f}{:>12.2f}{:>12.1f}{:>12.2f}{:>8.0f}%\n", id,
                 record.bottom.total_bugs, bottom_precision.back(), bottom_found.back(),
                 random_precision.back(), random_found.back(), 100.0 * overlap);
    }
  }

  MannWhitneyOptions options;
  options.alternative = command.alternative == "greater" ? Alternative::kGreater
                        : command.alternative == "less"  ? Alternative::kLess
                                                         : Alternative::kTwoSided;
  options.continuity_correction = command.continuity_correction;
  auto compare = [&](const char* name, const std::vector<double>& a,
                     const std::vector<double>& b) {
    const MannWhitneyResult r = MannWhitneyU(a, b, options);
    const double effect = VarghaDelaneyA(a, b);
    if (command.json) {
      fmt::print("{}\n", Json{{"statistic", name}, {"alternative", command.alternative},
                              {"u", r.u}, {"z", r.z}, {"p", r.p}, {"a12", effect}}.dump());
    } else {
      fmt::print("{:<16} U={:<6g} p={:.4f} ({}) A={:.2f}\n", name, r.u, r.p,
                 command.alternative, effect);
    }
  };
  if (!command.json) fmt::print("\nbottom vs random, Mann-Whitney U and Vargha-Delaney A:\n");
  compare("precision", bottom_precision, random_precision);
  compare("bugs_found", bottom_found, random_found);
  if (!bottom_found.empty()) {
    const double mean_overlap = overlap_sum / static_cast<double>(bottom_found.size());
    if (command.json) {
      fmt::print("{}\n", Json{{"mean_overlap", mean_overlap}}.dump());
    } else {
      fmt::print("mean overlap between random and bottom selections: {:.1f}%\n",
                 100.0 * mean_overlap);
    }
  }
  return 0;
}

int RunFetch(const GlobalOptions&, const FetchCommand& command) {
  std::vector<std::string> ids = command.ids;
  if (!command.ids_file.empty()) {
    std::ifstream in(command.ids_file);
    if (!in) {
      throw Error(ErrorCode::kIo, fmt::format("cannot open '{}'", command.ids_file.string()));
    }
    std::string line;
    while (std::getline(in, line)) {
      std::istringstream fields(line);
      std::string id;
      if (fields >> id && !id.starts_with('#')) ids.push_back(id);
    }
  }
  FetchOptions options = FetchOptionsFromEnvironment();
  if (!command.api_base.empty()) options.api_base = command.api_base;
  if (!command.projects_base.empty()) options.projects_base = command.projects_base;
  if (command.min_interval_ms >= 0) {
    options.min_interval = std::chrono::milliseconds(command.min_interval_ms);
  }
  ProjectFetcher fetcher(options);
  std::size_t failed = 0;
  const auto manifest =
      fetcher.FetchAll(ids, command.out, [&](const std::string& id, const std::exception& e) {
        ++failed;
        Json record{{"project", id}, {"message", e.what()}};
        if (const auto* error = dynamic_cast<const Error*>(&e)) {
          record["error"] = ErrorCodeName(error->code());
        }
        Report(record);
      });
  fmt::print("{} projects in {} ({} failed)\n", manifest.size(),
             (command.out / "manifest.tsv").string(), failed);
  return failed == 0 ? 0 : 1;
}

}  // namespace scratchlm::tools
