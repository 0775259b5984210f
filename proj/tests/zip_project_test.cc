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

#include "scratchlm/zip.h"

#include <zlib.h>

#include <gtest/gtest.h>

#include "scratchlm/project.h"
#include "support/test_util.h"

namespace scratchlm {
namespace {

void Put16(std::string& s, unsigned v) {
  s += static_cast<char>(v & 0xff);
  s += static_cast<char>((v >> 8) & 0xff);
}

void Put32(std::string& s, std::uint32_t v) {
  Put16(s, v & 0xffff);
  Put16(s, v >> 16);
}

// A single-entry archive whose entry is raw-deflate compressed, the way the
// Scratch editor writes project.json.
std::string DeflatedArchive(const std::string& name, const std::string& content) {
  z_stream z{};
  deflateInit2(&z, Z_BEST_COMPRESSION, Z_DEFLATED, -MAX_WBITS, 8, Z_DEFAULT_STRATEGY);
  std::string packed(deflateBound(&z, content.size()), '\0');
  z.next_in = reinterpret_cast<Bytef*>(const_cast<char*>(content.data()));
  z.avail_in = static_cast<uInt>(content.size());
  z.next_out = reinterpret_cast<Bytef*>(packed.data());
  z.avail_out = static_cast<uInt>(packed.size());
  deflate(&z, Z_FINISH);
  packed.resize(z.total_out);
  deflateEnd(&z);
  const auto crc = static_cast<std::uint32_t>(
      crc32(0, reinterpret_cast<const Bytef*>(content.data()), static_cast<uInt>(content.size())));

  std::string zip;
  Put32(zip, 0x04034b50);
  Put16(zip, 20); Put16(zip, 0); Put16(zip, 8); Put16(zip, 0); Put16(zip, 0x21);
  Put32(zip, crc); Put32(zip, static_cast<std::uint32_t>(packed.size()));
  Put32(zip, static_cast<std::uint32_t>(content.size()));
  Put16(zip, static_cast<unsigned>(name.size())); Put16(zip, 0);
  zip += name;
  zip += packed;
  const auto cd_offset = static_cast<std::uint32_t>(zip.size());
  Put32(zip, 0x02014b50);
  Put16(zip, 20); Put16(zip, 20); Put16(zip, 0); Put16(zip, 8); Put16(zip, 0); Put16(zip, 0x21);
  Put32(zip, crc); Put32(zip, static_cast<std::uint32_t>(packed.size()));
  Put32(zip, static_cast<std::uint32_t>(content.size()));
  Put16(zip, static_cast<unsigned>(name.size())); Put16(zip, 0); Put16(zip, 0);
  Put16(zip, 0); Put16(zip, 0); Put32(zip, 0); Put32(zip, 0);
  zip += name;
  const auto cd_size = static_cast<std::uint32_t>(zip.size()) - cd_offset;
  Put32(zip, 0x06054b50);
  Put16(zip, 0); Put16(zip, 0); Put16(zip, 1); Put16(zip, 1);
  Put32(zip, cd_size); Put32(zip, cd_offset); Put16(zip, 0);
  return zip;
}

TEST(ZipTest, StoredRoundTrip) {
  const std::string zip = WriteZip({{"project.json", "{\"targets\":[]}"}, {"a.svg", "<svg/>"}});
  const ZipReader reader(zip);
  EXPECT_EQ(reader.EntryNames(), (std::vector<std::string>{"project.json", "a.svg"}));
  EXPECT_TRUE(reader.Contains("a.svg"));
  EXPECT_EQ(reader.Read("project.json"), "{\"targets\":[]}");
  EXPECT_EQ(reader.Read("a.svg"), "<svg/>");
}

TEST(ZipTest, ReadsDeflatedEntries) {
  std::string content;
  for (int i = 0; i < 500; ++i) content += "{\"opcode\":\"motion_movesteps\"}";
  const std::string zip = DeflatedArchive("project.json", content);
  const ZipReader reader(zip);
  EXPECT_EQ(reader.Read("project.json"), content);
}

TEST(ZipTest, MissingEntry) {
  const ZipReader reader(WriteZip({{"a", "b"}}));
  EXPECT_SCRATCHLM_ERROR(reader.Read("project.json"), ErrorCode::kMalformedArchive);
}

TEST(ZipTest, NotAZip) {
  EXPECT_SCRATCHLM_ERROR(ZipReader("hello, world"), ErrorCode::kMalformedArchive);
  EXPECT_SCRATCHLM_ERROR(ZipReader(""), ErrorCode::kMalformedArchive);
}

TEST(ZipTest, TruncatedArchive) {
  const std::string zip = WriteZip({{"project.json", std::string(1000, 'x')}});
  EXPECT_SCRATCHLM_ERROR(ZipReader(zip.substr(0, zip.size() - 30)), ErrorCode::kMalformedArchive);
  const std::string tail = zip.substr(100);
  EXPECT_SCRATCHLM_ERROR(ZipReader(tail).Read("project.json"),
                         ErrorCode::kMalformedArchive);
}

TEST(ZipTest, CorruptedContentFailsCrc) {
  std::string zip = WriteZip({{"project.json", std::string(100, 'x')}});
  zip[60] = 'y';
  EXPECT_SCRATCHLM_ERROR(ZipReader(zip).Read("project.json"), ErrorCode::kMalformedArchive);
}

TEST(ProjectTest, ArchiveWithoutProjectJson) {
  EXPECT_SCRATCHLM_ERROR(ParseProject(WriteZip({{"costume.svg", "<svg/>"}})),
                         ErrorCode::kMalformedArchive);
}

TEST(ProjectTest, InvalidJson) {
  EXPECT_SCRATCHLM_ERROR(ParseProject(WriteZip({{"project.json", "{not json"}})),
                         ErrorCode::kMalformedArchive);
  EXPECT_SCRATCHLM_ERROR(ParseProjectJson("{\"meta\":{}}"), ErrorCode::kMalformedArchive);
}

TEST(ProjectTest, DanglingReferences) {
  EXPECT_SCRATCHLM_ERROR(ParseProjectJson(R"({"targets":[{"name":"S","isStage":false,"blocks":{
      "a":{"opcode":"event_whenflagclicked","next":"zzz","parent":null,"inputs":{},"topLevel":true}}}]})"),
                         ErrorCode::kMalformedProgram);
  EXPECT_SCRATCHLM_ERROR(ParseProjectJson(R"({"targets":[{"name":"S","isStage":false,"blocks":{
      "a":{"opcode":"control_repeat","next":null,"parent":null,"topLevel":true,
           "inputs":{"SUBSTACK":[2,"gone"]}}}}]})"),
                         ErrorCode::kMalformedProgram);
}

TEST(ProjectTest, Cycles) {
  EXPECT_SCRATCHLM_ERROR(ParseProjectJson(R"({"targets":[{"name":"S","isStage":false,"blocks":{
      "a":{"opcode":"motion_movesteps","next":"b","parent":"b","inputs":{}},
      "b":{"opcode":"motion_movesteps","next":"a","parent":"a","inputs":{}}}}]})"),
                         ErrorCode::kMalformedProgram);
  EXPECT_SCRATCHLM_ERROR(ParseProjectJson(R"({"targets":[{"name":"S","isStage":false,"blocks":{
      "r":{"opcode":"event_whenflagclicked","next":"a","parent":null,"inputs":{},"topLevel":true},
      "a":{"opcode":"control_forever","next":null,"parent":"r","inputs":{"SUBSTACK":[2,"a"]}}}}]})"),
                         ErrorCode::kMalformedProgram);
}

TEST(ProjectTest, PreservesFileOrderAndLinks) {
  const ProjectAst ast = ParseProjectJson(R"({"targets":[
    {"name":"Stage","isStage":true,"blocks":{}},
    {"name":"Cat","isStage":false,"blocks":{
      "z":{"opcode":"event_whenkeypressed","next":null,"parent":null,"inputs":{},"topLevel":true},
      "v":[12,"score","id1",5,5],
      "a":{"opcode":"event_whenflagclicked","next":"m","parent":null,"inputs":{},"topLevel":true},
      "m":{"opcode":"motion_movesteps","next":null,"parent":"a",
           "inputs":{"STEPS":[1,[4,"10"]]}}}}]})");
  ASSERT_EQ(ast.targets.size(), 2u);
  EXPECT_TRUE(ast.targets[0].is_stage);
  const Target& cat = ast.targets[1];
  const auto scripts = cat.Scripts();
  ASSERT_EQ(scripts.size(), 3u);
  EXPECT_EQ(scripts[0]->id, "z");
  EXPECT_EQ(scripts[1]->opcode, "data_variable");
  EXPECT_EQ(scripts[2]->id, "a");
  EXPECT_EQ(cat.Find("a")->next, "m");
  EXPECT_EQ(cat.Find("m")->inputs[0].primitive, PrimitiveKind::kNumber);
  EXPECT_EQ(ast.BlockNodeCount(), 4u);
}

}  // namespace
}  // namespace scratchlm
