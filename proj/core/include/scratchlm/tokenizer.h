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

#ifndef SCRATCHLM_TOKENIZER_H_
#define SCRATCHLM_TOKENIZER_H_

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "scratchlm/project.h"
#include "scratchlm/vocabulary.h"

namespace scratchlm {

struct TokenizeOptions {
  // Wrap each sprite's sequence in BEGIN_SPRITE/END_SPRITE.
  bool sprite_markers = false;
  // Order procedure-definition scripts before all other scripts of a sprite
  // (the sprite-level sequence layout the transformer baseline uses).
  bool procedures_first = false;
  const Vocabulary* vocabulary = &Vocabulary::Default();
};

struct TokenLocation {
  std::string project_id;
  std::string sprite;
  int script_index = 0;
  std::string block_id;  // empty for structural markers
};

// Token stream of one script: BEGIN_SCRIPT, the preorder blocks, END_SCRIPT.
struct ScriptStream {
  std::vector<TokenId> tokens;
  std::vector<std::string> block_ids;  // parallel to tokens
  std::string project_id;
  std::string sprite;
  int script_index = 0;  // position among the sprite's top-level blocks
  // False for loose code: scripts not rooted at an event handler or a
  // procedure definition.
  bool reachable = false;
  bool procedure = false;

  TokenLocation Location(std::size_t i) const {
    return {project_id, sprite, script_index, block_ids[i]};
  }
};

struct ProjectMeta {
  std::string id;
  // Concrete blocks emitted plus procedure definitions.
  std::size_t block_count = 0;
  bool is_remix = false;
};

// Bookkeeping for what the tokenizer kept and dropped.
struct TokenizeStats {
  std::size_t concrete_tokens = 0;       // block nodes emitted as tokens
  std::size_t variable_primitives = 0;   // inline variable/list reporters (VAR)
  std::size_t procedure_definitions = 0;
  std::size_t prototype_nodes = 0;       // prototypes + their argument shadows
  std::size_t shadow_nodes = 0;          // menus, literal fields
  std::size_t extension_blocks = 0;      // outside the vocabulary, dropped
  std::size_t orphan_nodes = 0;          // not reachable from any script
};

struct SpriteStreams {
  std::string name;
  std::vector<ScriptStream> scripts;
};

struct TokenizedProject {
  std::vector<SpriteStreams> sprites;
  ProjectMeta meta;
  TokenizeStats stats;
  bool sprite_markers = false;

  std::size_t ScriptCount() const;
};

// Tokenizes the script rooted at `root` (a top-level block of `target`) in
// preorder. Literals, menus and comments are dropped; variables, lists and
// parameters become VAR, custom block calls CALL, a definition hat
// PROCEDURE_DEF. `stats` may be null.
ScriptStream TokenizeScript(const Target& target, const Block& root,
                            int script_index, const TokenizeOptions& options,
                            TokenizeStats* stats = nullptr);

TokenizedProject TokenizeProject(const ProjectAst& ast,
                                 const TokenizeOptions& options = {});

// Parse + tokenize in one go.
TokenizedProject TokenizeArchive(std::string_view archive, std::string project_id,
                                 bool is_remix, const TokenizeOptions& options = {});

// One sprite's scripts concatenated, with sprite markers when enabled.
std::vector<TokenId> SpriteSequence(const SpriteStreams& sprite, bool sprite_markers);

// Corpus admission: at least `min_blocks` blocks and, when requested, not a
// remix.
bool FilterCorpus(const ProjectMeta& meta, std::size_t min_blocks,
                  bool exclude_remixes);

inline constexpr std::size_t kDefaultMinBlocks = 10;

}  // namespace scratchlm

#endif  // SCRATCHLM_TOKENIZER_H_
