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

#ifndef SCRATCHLM_PROJECT_H_
#define SCRATCHLM_PROJECT_H_

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace scratchlm {

// Scratch 3 compressed primitive type codes used inside block inputs.
enum class PrimitiveKind : int {
  kNone = 0,
  kNumber = 4,
  kPositiveNumber = 5,
  kWholeNumber = 6,
  kInteger = 7,
  kAngle = 8,
  kColor = 9,
  kText = 10,
  kBroadcast = 11,
  kVariable = 12,
  kList = 13,
};

// True for primitives that stand for a variable or list reporter.
constexpr bool IsVariablePrimitive(PrimitiveKind kind) {
  return kind == PrimitiveKind::kVariable || kind == PrimitiveKind::kList;
}

// One named input of a block, normalized from the [type, value, shadow]
// array form. `block` / `primitive` is what occupies the slot; `shadow` is the
// (possibly obscured) shadow block such as a menu or number field.
struct BlockInput {
  std::string name;
  std::optional<std::string> block;
  PrimitiveKind primitive = PrimitiveKind::kNone;
  std::optional<std::string> shadow;
};

struct Block {
  std::string id;
  std::string opcode;
  std::optional<std::string> next;
  std::optional<std::string> parent;
  std::vector<BlockInput> inputs;  // file order
  bool shadow = false;
  bool top_level = false;
  // Set for variable/list reporters stored in array form at the top level.
  PrimitiveKind primitive = PrimitiveKind::kNone;
};

// A stage or sprite with its block map. `blocks` keeps file order, which is
// what script ordering follows.
struct Target {
  std::string name;
  bool is_stage = false;
  std::vector<Block> blocks;
  std::unordered_map<std::string, std::size_t> index;

  const Block* Find(std::string_view id) const;
  // Top-level blocks in file order.
  std::vector<const Block*> Scripts() const;
};

struct ProjectAst {
  std::vector<Target> targets;

  std::size_t BlockNodeCount() const;
};

// Parses an sb3 archive. Throws Error(kMalformedArchive) when the bytes are
// not a ZIP or lack project.json, Error(kMalformedProgram) for dangling or
// cyclic block links.
ProjectAst ParseProject(std::string_view archive);

// Parses the project.json document alone.
ProjectAst ParseProjectJson(std::string_view json_text);

}  // namespace scratchlm

#endif  // SCRATCHLM_PROJECT_H_
