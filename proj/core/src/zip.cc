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

#include <algorithm>
#include <cstring>

#include <fmt/format.h>

#include "scratchlm/error.h"

namespace scratchlm {
namespace {

constexpr std::uint32_t kLocalHeaderSig = 0x04034b50;
constexpr std::uint32_t kCentralHeaderSig = 0x02014b50;
constexpr std::uint32_t kEndOfCentralDirSig = 0x06054b50;
constexpr std::size_t kEndOfCentralDirSize = 22;
constexpr std::size_t kCentralHeaderSize = 46;
constexpr std::size_t kLocalHeaderSize = 30;

[[noreturn]] void Malformed(const std::string& what) {
  throw Error(ErrorCode::kMalformedArchive, "malformed ZIP archive: " + what);
}

std::uint32_t Read16(std::string_view data, std::size_t pos) {
  if (pos + 2 > data.size()) Malformed("truncated record");
  auto b = reinterpret_cast<const unsigned char*>(data.data() + pos);
  return b[0] | (b[1] << 8);
}

std::uint32_t Read32(std::string_view data, std::size_t pos) {
  if (pos + 4 > data.size()) Malformed("truncated record");
  auto b = reinterpret_cast<const unsigned char*>(data.data() + pos);
  return static_cast<std::uint32_t>(b[0]) | (static_cast<std::uint32_t>(b[1]) << 8) |
         (static_cast<std::uint32_t>(b[2]) << 16) |
         (static_cast<std::uint32_t>(b[3]) << 24);
}

void Put16(std::string& out, std::uint32_t v) {
  out.push_back(static_cast<char>(v & 0xff));
  out.push_back(static_cast<char>((v >> 8) & 0xff));
}

void Put32(std::string& out, std::uint32_t v) {
  Put16(out, v & 0xffff);
  Put16(out, v >> 16);
}

std::uint32_t Crc32(std::string_view data) {
  uLong crc = crc32(0L, Z_NULL, 0);
  // zlib takes uInt lengths; sb3 entries are far below 4 GiB.
  crc = crc32(crc, reinterpret_cast<const Bytef*>(data.data()),
              static_cast<uInt>(data.size()));
  return static_cast<std::uint32_t>(crc);
}

std::string Inflate(std::string_view compressed, std::size_t expected_size) {
  std::string out(expected_size, '\0');
  z_stream stream{};
  if (inflateInit2(&stream, -MAX_WBITS) != Z_OK) Malformed("zlib init failed");
  stream.next_in = reinterpret_cast<Bytef*>(const_cast<char*>(compressed.data()));
  stream.avail_in = static_cast<uInt>(compressed.size());
  stream.next_out = reinterpret_cast<Bytef*>(out.data());
  stream.avail_out = static_cast<uInt>(out.size());
  int rc = inflate(&stream, Z_FINISH);
  const auto produced = stream.total_out;
  inflateEnd(&stream);
  if (rc != Z_STREAM_END || produced != expected_size) {
    Malformed("corrupt deflate stream");
  }
  return out;
}

}  // namespace

ZipReader::ZipReader(std::string_view archive) : archive_(archive) {
  if (archive.size() < kEndOfCentralDirSize) Malformed("too short");
  // The end-of-central-directory record sits before an optional comment of
  // up to 64 KiB.
  std::size_t lowest = archive.size() > kEndOfCentralDirSize + 0xffff
                           ? archive.size() - kEndOfCentralDirSize - 0xffff
                           : 0;
  std::size_t eocd = std::string_view::npos;
  for (std::size_t pos = archive.size() - kEndOfCentralDirSize + 1; pos-- > lowest;) {
    if (Read32(archive, pos) == kEndOfCentralDirSig) {
      eocd = pos;
      break;
    }
  }
  if (eocd == std::string_view::npos) Malformed("no end of central directory");

  const std::uint32_t count = Read16(archive, eocd + 10);
  const std::uint32_t dir_size = Read32(archive, eocd + 12);
  const std::uint32_t dir_offset = Read32(archive, eocd + 16);
  if (count == 0xffff || dir_offset == 0xffffffffu) Malformed("ZIP64 not supported");
  if (static_cast<std::size_t>(dir_offset) + dir_size > eocd) {
    Malformed("central directory out of range");
  }

  std::size_t pos = dir_offset;
  for (std::uint32_t i = 0; i < count; ++i) {
    if (Read32(archive, pos) != kCentralHeaderSig) Malformed("bad central header");
    Entry e;
    const std::uint32_t flags = Read16(archive, pos + 8);
    e.method = Read16(archive, pos + 10);
    e.crc = Read32(archive, pos + 16);
    e.compressed_size = Read32(archive, pos + 20);
    e.size = Read32(archive, pos + 24);
    const std::uint32_t name_len = Read16(archive, pos + 28);
    const std::uint32_t extra_len = Read16(archive, pos + 30);
    const std::uint32_t comment_len = Read16(archive, pos + 32);
    e.local_header_offset = Read32(archive, pos + 42);
    if (flags & 0x1) Malformed("encrypted entries not supported");
    if (pos + kCentralHeaderSize + name_len > archive.size()) Malformed("truncated name");
    e.name.assign(archive.substr(pos + kCentralHeaderSize, name_len));
    entries_.push_back(std::move(e));
    pos += kCentralHeaderSize + name_len + extra_len + comment_len;
  }
}

std::vector<std::string> ZipReader::EntryNames() const {
  std::vector<std::string> names;
  names.reserve(entries_.size());
  for (const Entry& e : entries_) names.push_back(e.name);
  return names;
}

const ZipReader::Entry* ZipReader::FindEntry(std::string_view name) const {
  auto it = std::find_if(entries_.begin(), entries_.end(),
                         [&](const Entry& e) { return e.name == name; });
  return it == entries_.end() ? nullptr : &*it;
}

bool ZipReader::Contains(std::string_view name) const {
  return FindEntry(name) != nullptr;
}

std::string ZipReader::Read(std::string_view name) const {
  const Entry* e = FindEntry(name);
  if (e == nullptr) Malformed(fmt::format("missing entry '{}'", name));
  const std::size_t header = e->local_header_offset;
  if (Read32(archive_, header) != kLocalHeaderSig) Malformed("bad local header");
  const std::size_t data_start = header + kLocalHeaderSize +
                                 Read16(archive_, header + 26) +
                                 Read16(archive_, header + 28);
  if (data_start + e->compressed_size > archive_.size()) {
    Malformed(fmt::format("entry '{}' truncated", name));
  }
  std::string_view raw = archive_.substr(data_start, e->compressed_size);
  std::string content;
  switch (e->method) {
    case 0:
      if (e->compressed_size != e->size) Malformed("stored size mismatch");
      content.assign(raw);
      break;
    case 8:
      content = Inflate(raw, e->size);
      break;
    default:
      Malformed(fmt::format("unsupported compression method {}", e->method));
  }
  if (Crc32(content) != e->crc) Malformed(fmt::format("CRC mismatch in '{}'", name));
  return content;
}

std::string WriteZip(const std::vector<std::pair<std::string, std::string>>& entries) {
  constexpr std::uint32_t kDosDate = (0 << 9) | (1 << 5) | 1;  // 1980-01-01
  std::string out;
  std::string directory;
  for (const auto& [name, content] : entries) {
    const std::uint32_t offset = static_cast<std::uint32_t>(out.size());
    const std::uint32_t crc = Crc32(content);
    const auto size = static_cast<std::uint32_t>(content.size());
    const auto name_len = static_cast<std::uint32_t>(name.size());

    Put32(out, kLocalHeaderSig);
    Put16(out, 20);  // version needed
    Put16(out, 0);   // flags
    Put16(out, 0);   // stored
    Put16(out, 0);   // time
    Put16(out, kDosDate);
    Put32(out, crc);
    Put32(out, size);
    Put32(out, size);
    Put16(out, name_len);
    Put16(out, 0);
    out += name;
    out += content;

    Put32(directory, kCentralHeaderSig);
    Put16(directory, 20);  // version made by
    Put16(directory, 20);  // version needed
    Put16(directory, 0);
    Put16(directory, 0);
    Put16(directory, 0);
    Put16(directory, kDosDate);
    Put32(directory, crc);
    Put32(directory, size);
    Put32(directory, size);
    Put16(directory, name_len);
    Put16(directory, 0);  // extra
    Put16(directory, 0);  // comment
    Put16(directory, 0);  // disk
    Put16(directory, 0);  // internal attributes
    Put32(directory, 0);  // external attributes
    Put32(directory, offset);
    directory += name;
  }
  const auto dir_offset = static_cast<std::uint32_t>(out.size());
  out += directory;
  Put32(out, kEndOfCentralDirSig);
  Put16(out, 0);
  Put16(out, 0);
  Put16(out, static_cast<std::uint32_t>(entries.size()));
  Put16(out, static_cast<std::uint32_t>(entries.size()));
  Put32(out, static_cast<std::uint32_t>(directory.size()));
  Put32(out, dir_offset);
  Put16(out, 0);
  return out;
}

}  // namespace scratchlm
