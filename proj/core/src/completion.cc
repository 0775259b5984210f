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

#include "scratchlm/completion.h"

#include <algorithm>
#include <istream>
#include <ostream>
#include <thread>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "scratchlm/error.h"

namespace scratchlm {
namespace {

using Json = nlohmann::ordered_json;

std::vector<Suggestion> Ranked(const NgramModel& model,
                               std::span<const TokenId> context) {
  const std::vector<double> p = model.Distribution(context);
  std::vector<Suggestion> ranked;
  ranked.reserve(p.size());
  for (TokenId w = 0; w < p.size(); ++w) {
    if (w == kEndScript || !IsExcludedSuggestion(w)) ranked.push_back({w, p[w]});
  }
  std::sort(ranked.begin(), ranked.end(), [](const Suggestion& a, const Suggestion& b) {
    return a.probability != b.probability ? a.probability > b.probability
                                          : a.token < b.token;
  });
  return ranked;
}

std::vector<Suggestion> TopX(std::vector<Suggestion> ranked, std::size_t x) {
  std::erase_if(ranked, [](const Suggestion& s) { return s.token == kEndScript; });
  if (ranked.size() > x) ranked.resize(x);
  return ranked;
}

void EvaluateStream(const NgramModel& model, const ScriptStream& stream,
                    std::size_t max_x, BatchResult& out) {
  const int n = model.order();
  for (std::size_t i = 1; i < stream.tokens.size(); ++i) {
    const TokenId truth = stream.tokens[i];
    if (truth == kEndScript) {
      ++out.end_positions;
      continue;
    }
    if (truth == kProcedureDef) {
      ++out.procedure_positions;
      continue;
    }
    if (IsExcludedSuggestion(truth)) continue;
    PredictionRecord r;
    r.project_id = stream.project_id;
    r.sprite = stream.sprite;
    r.script_index = stream.script_index;
    r.position = i;
    r.context = ExtractContext(stream.tokens, i, n);
    r.truth = truth;
    r.suggestions = Complete(model, r.context, max_x);
    out.records.push_back(std::move(r));
  }
}

}  // namespace

std::vector<TokenId> ExtractContext(std::span<const TokenId> tokens,
                                    std::size_t position, int n) {
  if (position > tokens.size()) {
    throw Error(ErrorCode::kInvalidArgument,
                fmt::format("position {} beyond stream of length {}", position,
                            tokens.size()));
  }
  const std::size_t keep = n > 1 ? static_cast<std::size_t>(n - 1) : 0;
  const std::size_t begin = position > keep ? position - keep : 0;
  return {tokens.begin() + begin, tokens.begin() + position};
}

std::vector<Suggestion> Complete(const NgramModel& model,
                                 std::span<const TokenId> context, std::size_t x,
                                 bool* new_script) {
  if (x == 0) {
    throw Error(ErrorCode::kInvalidArgument, "suggestion count must be at least 1");
  }
  std::vector<Suggestion> ranked = Ranked(model, context);
  const bool restart = !ranked.empty() && ranked.front().token == kEndScript;
  if (new_script != nullptr) *new_script = restart;
  if (restart) {
    // The script looks finished: offer a first block for the next one. This
    // second query never restarts again.
    const TokenId begin = kBeginScript;
    ranked = Ranked(model, std::span<const TokenId>(&begin, 1));
  }
  return TopX(std::move(ranked), x);
}

std::size_t PredictionRecord::Rank() const {
  for (std::size_t i = 0; i < suggestions.size(); ++i) {
    if (suggestions[i].token == truth) return i + 1;
  }
  return 0;
}

BatchResult BatchEvaluate(const NgramModel& model,
                          std::span<const ScriptStream> streams,
                          const BatchOptions& options) {
  if (options.max_x == 0) {
    throw Error(ErrorCode::kInvalidArgument, "suggestion count must be at least 1");
  }
  unsigned threads = options.threads == 0 ? std::thread::hardware_concurrency()
                                          : options.threads;
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(streams.size())));
  std::vector<BatchResult> parts(threads);
  const std::size_t chunk = (streams.size() + threads - 1) / threads;
  auto evaluate = [&](unsigned t) {
    const std::size_t begin = std::min(streams.size(), t * chunk);
    const std::size_t end = std::min(streams.size(), begin + chunk);
    for (std::size_t i = begin; i < end; ++i) {
      EvaluateStream(model, streams[i], options.max_x, parts[t]);
    }
  };
  if (threads == 1) {
    evaluate(0);
  } else {
    std::vector<std::jthread> workers;
    for (unsigned t = 0; t < threads; ++t) workers.emplace_back(evaluate, t);
  }
  BatchResult result;
  for (BatchResult& part : parts) {
    std::move(part.records.begin(), part.records.end(), std::back_inserter(result.records));
    result.end_positions += part.end_positions;
    result.procedure_positions += part.procedure_positions;
  }
  return result;
}

std::string FormatPredictionRecord(const PredictionRecord& record) {
  Json j;
  j["project"] = record.project_id;
  j["sprite"] = record.sprite;
  j["script"] = record.script_index;
  j["position"] = record.position;
  j["context"] = record.context;
  j["truth"] = record.truth;
  Json suggestions = Json::array();
  for (const Suggestion& s : record.suggestions) {
    suggestions.push_back(Json::array({s.token, s.probability}));
  }
  j["suggestions"] = std::move(suggestions);
  j["rank"] = record.Rank();
  return j.dump();
}

PredictionRecord ParsePredictionRecord(std::string_view line) {
  try {
    const Json j = Json::parse(line);
    PredictionRecord r;
    r.project_id = j.value("project", "");
    r.sprite = j.value("sprite", "");
    r.script_index = j.value("script", 0);
    r.position = j.value("position", std::size_t{0});
    r.context = j.at("context").get<std::vector<TokenId>>();
    r.truth = j.at("truth").get<TokenId>();
    for (const Json& s : j.at("suggestions")) {
      r.suggestions.push_back({s.at(0).get<TokenId>(), s.at(1).get<double>()});
    }
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kInvalidArgument,
                fmt::format("bad prediction record: {}", e.what()));
  }
}

void WritePredictionRecords(std::ostream& out,
                            std::span<const PredictionRecord> records) {
  for (const PredictionRecord& r : records) out << FormatPredictionRecord(r) << '\n';
}

std::vector<PredictionRecord> ReadPredictionRecords(std::istream& in) {
  std::vector<PredictionRecord> records;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    records.push_back(ParsePredictionRecord(line));
  }
  return records;
}

}  // namespace scratchlm
