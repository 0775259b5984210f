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

#include "scratchlm/project.h"

#include <utility>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "scratchlm/error.h"
#include "scratchlm/zip.h"

namespace scratchlm {
namespace {

using Json = nlohmann::ordered_json;

[[noreturn]] void MalformedProgram(const std::string& target,
                                   const std::string& what) {
  throw Error(ErrorCode::kMalformedProgram,
              fmt::format("target '{}': {}", target, what));
}

std::optional<std::string> OptionalId(const Json& value) {
  if (value.is_string()) return value.get<std::string>();
  return std::nullopt;
}

PrimitiveKind PrimitiveKindOf(const Json& array) {
  if (!array.is_array() || array.empty() || !array[0].is_number_integer()) {
    return PrimitiveKind::kNone;
  }
  return static_cast<PrimitiveKind>(array[0].get<int>());
}

BlockInput ParseInput(const std::string& name, const Json& value) {
  BlockInput input;
  input.name = name;
  if (!value.is_array() || value.empty() || !value[0].is_number_integer()) {
    return input;
  }
  const int type = value[0].get<int>();
  if (value.size() > 1) {
    const Json& occupant = value[1];
    if (occupant.is_array()) {
      input.primitive = PrimitiveKindOf(occupant);
    } else if (occupant.is_string()) {
      if (type == 1) {
        input.shadow = occupant.get<std::string>();
      } else {
        input.block = occupant.get<std::string>();
      }
    }
  }
  if (type == 3 && value.size() > 2 && value[2].is_string()) {
    input.shadow = value[2].get<std::string>();
  }
  return input;
}

Block ParseBlock(const std::string& target, const std::string& id,
                 const Json& value) {
  Block block;
  block.id = id;
  if (value.is_array()) {
    block.primitive = PrimitiveKindOf(value);
    if (!IsVariablePrimitive(block.primitive)) {
      MalformedProgram(target, fmt::format("block '{}' has unsupported array form", id));
    }
    block.opcode = block.primitive == PrimitiveKind::kVariable
                       ? "data_variable"
                       : "data_listcontents";
    block.top_level = true;
    return block;
  }
  if (!value.is_object()) {
    MalformedProgram(target, fmt::format("block '{}' is not an object", id));
  }
  auto opcode = value.find("opcode");
  if (opcode == value.end() || !opcode->is_string()) {
    MalformedProgram(target, fmt::format("block '{}' has no opcode", id));
  }
  block.opcode = opcode->get<std::string>();
  if (auto it = value.find("next"); it != value.end()) block.next = OptionalId(*it);
  if (auto it = value.find("parent"); it != value.end()) block.parent = OptionalId(*it);
  if (auto it = value.find("shadow"); it != value.end() && it->is_boolean()) {
    block.shadow = it->get<bool>();
  }
  if (auto it = value.find("topLevel"); it != value.end() && it->is_boolean()) {
    block.top_level = it->get<bool>();
  }
  if (auto it = value.find("inputs"); it != value.end() && it->is_object()) {
    for (const auto& [name, input] : it->items()) {
      block.inputs.push_back(ParseInput(name, input));
    }
  }
  return block;
}

void RequireBlock(const Target& target, const Block& from,
                  const std::optional<std::string>& ref, std::string_view link) {
  if (ref && target.Find(*ref) == nullptr) {
    MalformedProgram(target.name,
                     fmt::format("block '{}' has dangling {} reference '{}'",
                                 from.id, link, *ref));
  }
}

void Validate(const Target& target) {
  for (const Block& b : target.blocks) {
    RequireBlock(target, b, b.next, "next");
    RequireBlock(target, b, b.parent, "parent");
    for (const BlockInput& in : b.inputs) {
      RequireBlock(target, b, in.block, "input");
      RequireBlock(target, b, in.shadow, "shadow");
    }
  }

  // Parent chains must terminate.
  for (const Block& b : target.blocks) {
    const Block* cursor = &b;
    std::size_t steps = 0;
    while (cursor->parent) {
      if (++steps > target.blocks.size()) {
        MalformedProgram(target.name,
                         fmt::format("cyclic parent links through block '{}'", b.id));
      }
      cursor = target.Find(*cursor->parent);
    }
  }

  // Child links (next + inputs) must form a forest: no block may reach itself.
  enum class Mark : unsigned char { kUnvisited, kActive, kDone };
  std::vector<Mark> marks(target.blocks.size(), Mark::kUnvisited);
  std::vector<std::pair<std::size_t, std::size_t>> stack;  // (block, next child)
  auto children = [&](std::size_t i) {
    std::vector<std::size_t> out;
    const Block& b = target.blocks[i];
    for (const BlockInput& in : b.inputs) {
      if (in.block) out.push_back(target.index.at(*in.block));
      if (in.shadow) out.push_back(target.index.at(*in.shadow));
    }
    if (b.next) out.push_back(target.index.at(*b.next));
    return out;
  };
  for (std::size_t root = 0; root < target.blocks.size(); ++root) {
    if (marks[root] != Mark::kUnvisited) continue;
    marks[root] = Mark::kActive;
    stack.emplace_back(root, 0);
    while (!stack.empty()) {
      auto& [node, cursor] = stack.back();
      auto kids = children(node);
      if (cursor == kids.size()) {
        marks[node] = Mark::kDone;
        stack.pop_back();
        continue;
      }
      std::size_t child = kids[cursor++];
      if (marks[child] == Mark::kActive) {
        MalformedProgram(target.name,
                         fmt::format("cyclic block links through '{}'",
                                     target.blocks[child].id));
      }
      if (marks[child] == Mark::kUnvisited) {
        marks[child] = Mark::kActive;
        stack.emplace_back(child, 0);
      }
    }
  }
}

}  // namespace

const Block* Target::Find(std::string_view id) const {
  auto it = index.find(std::string(id));
  return it == index.end() ? nullptr : &blocks[it->second];
}

std::vector<const Block*> Target::Scripts() const {
  std::vector<const Block*> roots;
  for (const Block& b : blocks) {
    if (b.top_level && !b.shadow) roots.push_back(&b);
  }
  return roots;
}

std::size_t ProjectAst::BlockNodeCount() const {
  std::size_t n = 0;
  for (const Target& t : targets) n += t.blocks.size();
  return n;
}

ProjectAst ParseProjectJson(std::string_view json_text) {
  Json doc = Json::parse(json_text, nullptr, /*allow_exceptions=*/false);
  if (doc.is_discarded() || !doc.is_object()) {
    throw Error(ErrorCode::kMalformedArchive, "project.json is not a JSON object");
  }
  auto targets = doc.find("targets");
  if (targets == doc.end() || !targets->is_array()) {
    throw Error(ErrorCode::kMalformedArchive,
                "project.json has no targets array (Scratch 2 projects are not supported)");
  }
  ProjectAst ast;
  for (const Json& t : *targets) {
    if (!t.is_object()) {
      throw Error(ErrorCode::kMalformedArchive, "target is not an object");
    }
    Target target;
    target.name = t.value("name", std::string{});
    target.is_stage = t.value("isStage", false);
    if (auto blocks = t.find("blocks"); blocks != t.end() && blocks->is_object()) {
      for (const auto& [id, value] : blocks->items()) {
        target.index.emplace(id, target.blocks.size());
        target.blocks.push_back(ParseBlock(target.name, id, value));
      }
    }
    Validate(target);
    ast.targets.push_back(std::move(target));
  }
  return ast;
}

ProjectAst ParseProject(std::string_view archive) {
  ZipReader zip(archive);
  if (!zip.Contains("project.json")) {
    throw Error(ErrorCode::kMalformedArchive, "archive has no project.json entry");
  }
  return ParseProjectJson(zip.Read("project.json"));
}

}  // namespace scratchlm
