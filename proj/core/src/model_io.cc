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

#include "scratchlm/model_io.h"

#include <array>
#include <fstream>
#include <istream>
#include <iterator>
#include <ostream>

#include <fmt/format.h>

#include "scratchlm/error.h"

namespace scratchlm {
namespace {

constexpr std::string_view kMagic = "SLMN";

std::uint64_t Fnv1a(std::string_view bytes) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

class Writer {
 public:
  template <typename T>
  void Put(T value) {
    for (std::size_t i = 0; i < sizeof(T); ++i) {
      out_ += static_cast<char>((static_cast<std::uint64_t>(value) >> (8 * i)) & 0xff);
    }
  }
  void PutBytes(std::string_view s) { out_ += s; }
  std::string& str() { return out_; }

 private:
  std::string out_;
};

class Reader {
 public:
  explicit Reader(std::string_view bytes) : bytes_(bytes) {}

  template <typename T>
  T Get() {
    if (bytes_.size() - pos_ < sizeof(T)) {
      throw Error(ErrorCode::kCorruptModel, "model file is truncated");
    }
    std::uint64_t v = 0;
    for (std::size_t i = 0; i < sizeof(T); ++i) {
      v |= static_cast<std::uint64_t>(static_cast<unsigned char>(bytes_[pos_ + i]))
           << (8 * i);
    }
    pos_ += sizeof(T);
    return static_cast<T>(v);
  }
  std::size_t remaining() const { return bytes_.size() - pos_; }

 private:
  std::string_view bytes_;
  std::size_t pos_ = 0;
};

void PutTable(Writer& w, const NgramTable& table) {
  const auto entries = SortedEntries(table);
  w.Put<std::uint64_t>(entries.size());
  for (const auto& [g, c] : entries) {
    for (TokenId id : g.view()) w.Put<std::uint32_t>(id);
    w.Put<std::uint64_t>(c);
  }
}

template <typename Set>
void GetTable(Reader& r, int k, std::size_t vocabulary_size, Set set) {
  const auto n = r.Get<std::uint64_t>();
  const std::size_t entry_size = 4 * static_cast<std::size_t>(k) + 8;
  if (n > r.remaining() / entry_size) {
    throw Error(ErrorCode::kCorruptModel, "model table extends past end of file");
  }
  std::array<TokenId, kMaxOrder> ids{};
  for (std::uint64_t i = 0; i < n; ++i) {
    for (int j = 0; j < k; ++j) {
      ids[j] = r.Get<std::uint32_t>();
      if (ids[j] >= vocabulary_size) {
        throw Error(ErrorCode::kCorruptModel, "model references a token outside its vocabulary");
      }
    }
    set(Ngram(std::span<const TokenId>(ids.data(), k)), r.Get<std::uint64_t>());
  }
}

}  // namespace

std::string SerializeModel(const NgramModel& model) {
  const NgramCounts& counts = model.counts();
  Writer w;
  w.PutBytes(kMagic);
  w.Put<std::uint32_t>(kModelFormatVersion);
  w.Put<std::uint32_t>(static_cast<std::uint32_t>(counts.order()));
  w.Put<std::uint64_t>(counts.vocabulary_size());
  w.Put<std::uint64_t>(counts.vocabulary_fingerprint());
  w.Put<std::uint64_t>(counts.units());
  for (int k = 1; k <= counts.order(); ++k) PutTable(w, counts.table(k));
  for (int k = 1; k <= counts.order(); ++k) PutTable(w, counts.start_table(k));
  w.Put<std::uint64_t>(Fnv1a(w.str()));
  return std::move(w.str());
}

NgramModel DeserializeModel(std::string_view bytes) {
  if (bytes.size() < kMagic.size() + 4 || bytes.substr(0, kMagic.size()) != kMagic) {
    throw Error(ErrorCode::kCorruptModel, "not a scratchlm model file");
  }
  Reader r(bytes.substr(kMagic.size()));
  const auto version = r.Get<std::uint32_t>();
  if (version != kModelFormatVersion) {
    throw Error(ErrorCode::kFormatVersionMismatch,
                fmt::format("model format version {} (this build reads {})", version,
                            kModelFormatVersion));
  }
  if (bytes.size() < kMagic.size() + 4 + 8) {
    throw Error(ErrorCode::kCorruptModel, "model file is truncated");
  }
  const std::string_view body = bytes.substr(0, bytes.size() - 8);
  Reader trailer(bytes.substr(bytes.size() - 8));
  if (trailer.Get<std::uint64_t>() != Fnv1a(body)) {
    throw Error(ErrorCode::kCorruptModel, "model checksum mismatch");
  }
  r = Reader(body.substr(kMagic.size() + 4));
  const auto order = r.Get<std::uint32_t>();
  const auto vocabulary_size = r.Get<std::uint64_t>();
  const auto fingerprint = r.Get<std::uint64_t>();
  const auto units = r.Get<std::uint64_t>();
  if (order < 1 || order > kMaxOrder || vocabulary_size == 0 ||
      vocabulary_size > (1ULL << 32)) {
    throw Error(ErrorCode::kCorruptModel, "model header is out of range");
  }
  NgramCounts counts(static_cast<int>(order), vocabulary_size, fingerprint);
  counts.set_units(units);
  for (int k = 1; k <= static_cast<int>(order); ++k) {
    GetTable(r, k, vocabulary_size,
             [&](const Ngram& g, std::uint64_t c) { counts.SetCount(g, c); });
  }
  for (int k = 1; k <= static_cast<int>(order); ++k) {
    GetTable(r, k, vocabulary_size,
             [&](const Ngram& g, std::uint64_t c) { counts.SetStartCount(g, c); });
  }
  if (r.remaining() != 0) {
    throw Error(ErrorCode::kCorruptModel, "trailing bytes in model file");
  }
  return NgramModel::Fit(std::move(counts));
}

void SaveModel(const NgramModel& model, std::ostream& out) {
  const std::string bytes = SerializeModel(model);
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error(ErrorCode::kIo, "failed to write model");
}

void SaveModel(const NgramModel& model, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw Error(ErrorCode::kIo, fmt::format("cannot open '{}' for writing", path.string()));
  }
  SaveModel(model, out);
}

NgramModel LoadModel(std::istream& in) {
  const std::string bytes{std::istreambuf_iterator<char>(in),
                          std::istreambuf_iterator<char>()};
  return DeserializeModel(bytes);
}

NgramModel LoadModel(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorCode::kIo, fmt::format("cannot open '{}'", path.string()));
  }
  return LoadModel(in);
}

}  // namespace scratchlm
