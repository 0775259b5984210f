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

// Writes a small synthetic Scratch corpus for end-to-end CLI tests:
//   <dir>/projects/*.sb3, <dir>/manifest.tsv (train/eval split, one remix,
//   one project under the block threshold), <dir>/solutions/*.sb3 (reference
//   solutions of one exercise), <dir>/students/*.sb3 (solutions with seeded
//   bugs) and <dir>/bugs.tsv (ground truth).

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include "scratchlm/manifest.h"
#include "support/sb3_builder.h"

namespace {

namespace fs = std::filesystem;
using ::scratchlm::ManifestEntry;
using ::scratchlm::Split;
using ::scratchlm::testing::ProjectBuilder;
using ::scratchlm::testing::TargetBuilder;

struct ScriptShape {
  std::string hat;
  std::vector<std::string> stack;
  std::string c_block;  // empty: none
  std::vector<std::string> body;
};

const std::vector<ScriptShape> kShapes = {
    {"event_whenflagclicked", {"motion_gotoxy", "looks_show"}, "control_forever",
     {"motion_movesteps", "motion_ifonedgebounce"}},
    {"event_whenflagclicked", {"motion_gotoxy", "looks_show", "looks_say"}, "", {}},
    {"event_whenkeypressed", {"motion_changexby"}, "", {}},
    {"event_whenthisspriteclicked", {"sound_play", "looks_nextcostume", "control_wait"}, "", {}},
    {"event_whenflagclicked", {"looks_hide"}, "control_repeat",
     {"motion_turnright", "control_wait"}},
    {"event_whenkeypressed", {"motion_movesteps", "looks_nextcostume"}, "", {}},
};

const std::vector<std::string> kExtras = {"looks_changesizeby", "control_wait", "sound_play",
                                          "motion_turnright", "looks_say"};

// Adds the script; returns its block ids in stream order.
std::vector<std::string> AddScript(TargetBuilder& target, const ScriptShape& shape) {
  std::vector<std::string> ids{target.Hat(shape.hat)};
  for (const std::string& opcode : shape.stack) {
    ids.push_back(target.Add(opcode));
    target.Next(ids[ids.size() - 2], ids.back());
  }
  if (shape.c_block.empty()) return ids;
  const std::string c = target.Add(shape.c_block);
  target.Next(ids.back(), c);
  ids.push_back(c);
  if (shape.c_block == "control_repeat") target.Literal(c, "TIMES", "10");
  std::string prev;
  for (const std::string& opcode : shape.body) {
    const std::string id = target.Add(opcode);
    if (prev.empty()) {
      target.Substack(c, id);
    } else {
      target.Next(prev, id);
    }
    ids.push_back(id);
    prev = id;
  }
  return ids;
}

void Write(const fs::path& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary);
  out << bytes;
  if (!out) {
    std::cerr << "cannot write " << path << '\n';
    std::exit(1);
  }
}

std::string RandomProject(std::mt19937& rng) {
  ProjectBuilder project;
  const int sprites = 1 + static_cast<int>(rng() % 2);
  for (int s = 0; s < sprites; ++s) {
    TargetBuilder& sprite = project.AddSprite("Sprite" + std::to_string(s + 1));
    const int scripts = 3 + static_cast<int>(rng() % 3);
    for (int i = 0; i < scripts; ++i) {
      ScriptShape shape = i == 0 ? kShapes[0] : kShapes[rng() % kShapes.size()];
      if (rng() % 3 == 0) shape.stack.push_back(kExtras[rng() % kExtras.size()]);
      AddScript(sprite, shape);
    }
    if (rng() % 4 == 0) sprite.Hat("motion_movesteps");  // loose block
  }
  return project.Archive();
}

}  // namespace

int main(int argc, char** argv) {
  if (argc != 2) {
    std::cerr << "usage: make_test_corpus <output directory>\n";
    return 2;
  }
  const fs::path dir = argv[1];
  fs::create_directories(dir / "projects");
  fs::create_directories(dir / "solutions");
  fs::create_directories(dir / "students");
  std::mt19937 rng(2026);

  std::vector<ManifestEntry> manifest;
  for (int i = 0; i < 40; ++i) {
    const std::string id = std::to_string(1000 + i);
    const fs::path file = dir / "projects" / (id + ".sb3");
    Write(file, RandomProject(rng));
    manifest.push_back({id, fs::path("projects") / (id + ".sb3"), i == 7,
                        i < 30 ? Split::kTrain : Split::kEval});
  }
  ProjectBuilder tiny;
  AddScript(tiny.AddSprite("Sprite1"), kShapes[2]);
  Write(dir / "projects" / "2000.sb3", tiny.Archive());
  manifest.push_back({"2000", fs::path("projects") / "2000.sb3", false, Split::kTrain});
  scratchlm::WriteManifest(dir / "manifest.tsv", manifest);

  // The exercise: three scripts every solution shares, plus one varying script.
  const std::vector<ScriptShape> exercise{kShapes[0], kShapes[3], kShapes[4]};
  for (int i = 0; i < 8; ++i) {
    ProjectBuilder solution;
    TargetBuilder& sprite = solution.AddSprite("Sprite1");
    for (const ScriptShape& shape : exercise) AddScript(sprite, shape);
    AddScript(sprite, kShapes[1 + i % 2]);
    Write(dir / "solutions" / ("solution" + std::to_string(i) + ".sb3"), solution.Archive());
  }

  std::ofstream truth(dir / "bugs.tsv");
  truth << "# program\tbug\tblock\n";
  for (int i = 0; i < 6; ++i) {
    const std::string id = "K1_S0" + std::to_string(i + 1);
    ProjectBuilder student;
    TargetBuilder& sprite = student.AddSprite("Sprite1");
    std::vector<std::string> ids;
    for (const ScriptShape& shape : exercise) {
      const auto added = AddScript(sprite, shape);
      ids.insert(ids.end(), added.begin(), added.end());
    }
    AddScript(sprite, kShapes[1]);
    // One seeded bug: a block never used by any solution.
    const std::string& wrong = ids[1 + static_cast<std::size_t>(i) % 5];
    sprite.block(wrong)["opcode"] = i % 2 == 0 ? "pen_stamp" : "pen_clear";
    truth << id << "\tmutation\t" << wrong << '\n';
    // A second bug that uses known blocks in an unusual order.
    if (i % 3 == 0) {
      const std::string hat = sprite.Hat("event_whenflagclicked");
      const std::string wait = sprite.Add("control_wait");
      sprite.Next(hat, wait);
      truth << id << "\tidle\t" << wait << '\n';
    }
    Write(dir / "students" / (id + ".sb3"), student.Archive());
  }
  return truth ? 0 : 1;
}
