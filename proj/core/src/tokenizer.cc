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

#include "scratchlm/tokenizer.h"

#include <algorithm>
#include <unordered_set>

namespace scratchlm {
namespace {

constexpr std::string_view kProcedureDefinition = "procedures_definition";
constexpr std::string_view kProcedurePrototype = "procedures_prototype";

bool IsSubstack(std::string_view input_name) {
  return input_name.starts_with("SUBSTACK");
}

class ScriptWalker {
 public:
  ScriptWalker(const Target& target, const Vocabulary& vocabulary,
               TokenizeStats& stats, std::unordered_set<const Block*>& visited,
               ScriptStream& out)
      : target_(target), vocabulary_(vocabulary), stats_(stats),
        visited_(visited), out_(out) {}

  // Statement chain starting at `block`, following `next` links.
  void Chain(const Block* block) {
    while (block != nullptr) {
      Node(*block);
      block = block->next ? target_.Find(*block->next) : nullptr;
    }
  }

 private:
  void Emit(TokenId id, const std::string& block_id) {
    out_.tokens.push_back(id);
    out_.block_ids.push_back(block_id);
  }

  void Node(const Block& block) {
    visited_.insert(&block);
    if (block.shadow) {
      Excluded(block, block.opcode == kProcedurePrototype
                          ? stats_.prototype_nodes
                          : stats_.shadow_nodes);
      return;
    }
    if (block.opcode == kProcedureDefinition) {
      Emit(kProcedureDef, block.id);
      ++stats_.procedure_definitions;
    } else if (block.opcode == kProcedurePrototype) {
      Excluded(block, stats_.prototype_nodes);
      return;
    } else if (auto id = vocabulary_.FromOpcode(block.opcode)) {
      Emit(*id, block.id);
      ++stats_.concrete_tokens;
    } else {
      ++stats_.extension_blocks;
    }
    // Expression inputs precede statement bodies.
    for (const BlockInput& in : block.inputs) {
      if (!IsSubstack(in.name)) Input(block, in);
    }
    for (const BlockInput& in : block.inputs) {
      if (IsSubstack(in.name)) Input(block, in);
    }
  }

  void Input(const Block& owner, const BlockInput& in) {
    if (in.block) {
      Chain(target_.Find(*in.block));
    } else if (IsVariablePrimitive(in.primitive)) {
      Emit(vocabulary_.var_token(), owner.id);
      ++stats_.variable_primitives;
    }
    if (in.shadow) {
      if (const Block* shadow = target_.Find(*in.shadow)) {
        visited_.insert(shadow);
        Excluded(*shadow, shadow->opcode == kProcedurePrototype
                              ? stats_.prototype_nodes
                              : stats_.shadow_nodes);
      }
    }
  }

  // Counts a dropped subtree without emitting anything.
  void Excluded(const Block& block, std::size_t& counter) {
    ++counter;
    for (const BlockInput& in : block.inputs) {
      for (const auto& ref : {in.block, in.shadow}) {
        if (!ref) continue;
        if (const Block* child = target_.Find(*ref)) {
          visited_.insert(child);
          Excluded(*child, counter);
        }
      }
    }
    if (block.next) {
      if (const Block* next = target_.Find(*block.next)) {
        visited_.insert(next);
        Excluded(*next, counter);
      }
    }
  }

  const Target& target_;
  const Vocabulary& vocabulary_;
  TokenizeStats& stats_;
  std::unordered_set<const Block*>& visited_;
  ScriptStream& out_;
};

bool RootsExecutableScript(const Block& root, const Vocabulary& vocabulary) {
  if (root.opcode == kProcedureDefinition) return true;
  if (auto id = vocabulary.FromOpcode(root.opcode)) {
    return vocabulary.Metadata(*id).shape == BlockShape::kHat;
  }
  // Extension hats (e.g. videoSensing_whenMotionGreaterThan) are dropped
  // from the stream but still make the script executable.
  return root.opcode.find("_when") != std::string::npos;
}

ScriptStream Walk(const Target& target, const Block& root, int script_index,
                  const TokenizeOptions& options, TokenizeStats& stats,
                  std::unordered_set<const Block*>& visited) {
  ScriptStream stream;
  stream.sprite = target.name;
  stream.script_index = script_index;
  stream.reachable = RootsExecutableScript(root, *options.vocabulary);
  stream.procedure = root.opcode == kProcedureDefinition;
  stream.tokens.push_back(kBeginScript);
  stream.block_ids.emplace_back();
  ScriptWalker(target, *options.vocabulary, stats, visited, stream).Chain(&root);
  stream.tokens.push_back(kEndScript);
  stream.block_ids.emplace_back();
  return stream;
}

}  // namespace

std::size_t TokenizedProject::ScriptCount() const {
  std::size_t n = 0;
  for (const SpriteStreams& s : sprites) n += s.scripts.size();
  return n;
}

ScriptStream TokenizeScript(const Target& target, const Block& root,
                            int script_index, const TokenizeOptions& options,
                            TokenizeStats* stats) {
  TokenizeStats local;
  std::unordered_set<const Block*> visited;
  return Walk(target, root, script_index, options, stats ? *stats : local, visited);
}

TokenizedProject TokenizeProject(const ProjectAst& ast,
                                 const TokenizeOptions& options) {
  TokenizedProject project;
  project.sprite_markers = options.sprite_markers;
  for (const Target& target : ast.targets) {
    SpriteStreams sprite;
    sprite.name = target.name;
    std::unordered_set<const Block*> visited;
    int index = 0;
    for (const Block* root : target.Scripts()) {
      sprite.scripts.push_back(
          Walk(target, *root, index++, options, project.stats, visited));
    }
    project.stats.orphan_nodes += target.blocks.size() - visited.size();
    if (options.procedures_first) {
      std::stable_partition(sprite.scripts.begin(), sprite.scripts.end(),
                            [](const ScriptStream& s) { return s.procedure; });
    }
    project.sprites.push_back(std::move(sprite));
  }
  const TokenizeStats& s = project.stats;
  project.meta.block_count =
      s.concrete_tokens + s.variable_primitives + s.procedure_definitions;
  return project;
}

TokenizedProject TokenizeArchive(std::string_view archive, std::string project_id,
                                 bool is_remix, const TokenizeOptions& options) {
  TokenizedProject project = TokenizeProject(ParseProject(archive), options);
  for (SpriteStreams& sprite : project.sprites) {
    for (ScriptStream& script : sprite.scripts) script.project_id = project_id;
  }
  project.meta.id = std::move(project_id);
  project.meta.is_remix = is_remix;
  return project;
}

std::vector<TokenId> SpriteSequence(const SpriteStreams& sprite,
                                    bool sprite_markers) {
  std::vector<TokenId> tokens;
  if (sprite_markers) tokens.push_back(kBeginSprite);
  for (const ScriptStream& script : sprite.scripts) {
    tokens.insert(tokens.end(), script.tokens.begin(), script.tokens.end());
  }
  if (sprite_markers) tokens.push_back(kEndSprite);
  return tokens;
}

bool FilterCorpus(const ProjectMeta& meta, std::size_t min_blocks,
                  bool exclude_remixes) {
  return meta.block_count >= min_blocks && !(exclude_remixes && meta.is_remix);
}

}  // namespace scratchlm
