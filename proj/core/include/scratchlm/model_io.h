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

#ifndef SCRATCHLM_MODEL_IO_H_
#define SCRATCHLM_MODEL_IO_H_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>

#include "scratchlm/ngram_model.h"

namespace scratchlm {

inline constexpr std::uint32_t kModelFormatVersion = 1;

// Serializes the count tables of `model`; discounts and backoff weights are
// refitted on load. See docs/model_format.md for the byte layout.
std::string SerializeModel(const NgramModel& model);
NgramModel DeserializeModel(std::string_view bytes);

void SaveModel(const NgramModel& model, std::ostream& out);
void SaveModel(const NgramModel& model, const std::filesystem::path& path);
NgramModel LoadModel(std::istream& in);
NgramModel LoadModel(const std::filesystem::path& path);

}  // namespace scratchlm

#endif  // SCRATCHLM_MODEL_IO_H_
