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

#ifndef SCRATCHLM_TESTS_SUPPORT_SB3_BUILDER_H_
#define SCRATCHLM_TESTS_SUPPORT_SB3_BUILDER_H_

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace scratchlm::testing {

// Builds Scratch 3 project.json documents block by block. Block ids are
// assigned sequentially ("b1", "b2", ...) in insertion order, which is also
// the order they appear in the file.
class TargetBuilder {
 public:
  TargetBuilder(std::string name, bool is_stage)
      : name_(std::move(name)), is_stage_(is_stage) {}

  // Adds a block; top-level blocks start a script.
  std::string Add(const std::string& opcode, bool top_level = false);
  std::string Hat(const std::string& opcode) { return Add(opcode, true); }
  // Appends `next` after `prev` in a stack.
  void Next(const std::string& prev, const std::string& next);
  // Adds blocks as a stack below `prev`; returns the last id.
  std::string Chain(const std::string& prev, const std::vector<std::string>& opcodes);
  // Plugs `child` into `input` of `parent` (an obscured-shadow input when
  // `with_shadow` is set, as for reporters dropped into a number slot).
  void Plug(const std::string& parent, const std::string& input,
            const std::string& child, bool with_shadow = false);
  // A substack (C-block body).
  void Substack(const std::string& parent, const std::string& child,
                const std::string& input = "SUBSTACK") {
    Plug(parent, input, child);
  }
  // A compressed literal [1, [4, value]].
  void Literal(const std::string& parent, const std::string& input,
               const std::string& value);
  // A menu or literal shadow block; returns its id.
  std::string Menu(const std::string& parent, const std::string& input,
                   const std::string& opcode);
  // An inline variable [3, [12, name, id], [10, ""]].
  void Variable(const std::string& parent, const std::string& input,
                const std::string& name);
  void List(const std::string& parent, const std::string& input,
            const std::string& name);
  void Field(const std::string& block, const std::string& field,
             const std::string& value);
  // A loose top-level variable reporter [12, name, id, x, y].
  void LooseVariable(const std::string& name);
  // A custom block definition with its prototype; returns the definition id.
  std::string Procedure(const std::string& proccode,
                        const std::vector<std::string>& arguments = {});
  nlohmann::ordered_json& block(const std::string& id) { return blocks_[id]; }

  nlohmann::ordered_json Json() const;

 private:
  std::string NewId() { return "b" + std::to_string(++next_id_); }

  std::string name_;
  bool is_stage_;
  int next_id_ = 0;
  nlohmann::ordered_json blocks_ = nlohmann::ordered_json::object();
};

class ProjectBuilder {
 public:
  ProjectBuilder() { targets_.emplace_back("Stage", true); }

  TargetBuilder& stage() { return targets_.front(); }
  TargetBuilder& AddSprite(const std::string& name) {
    return targets_.emplace_back(name, false);
  }

  std::string Json() const;
  // A .sb3 archive containing project.json.
  std::string Archive() const;

 private:
  std::vector<TargetBuilder> targets_;
};

}  // namespace scratchlm::testing

#endif  // SCRATCHLM_TESTS_SUPPORT_SB3_BUILDER_H_
