/**
 * Copyright 2026 The fedround Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "fedround/idx.h"

#include <cstdio>
#include <fstream>
#include <iterator>
#include <string>

#include "fedround/errors.h"

namespace fedround {
namespace {

std::uint32_t read_be32(std::span<const std::uint8_t> bytes, std::size_t at) {
  return (std::uint32_t{bytes[at]} << 24) | (std::uint32_t{bytes[at + 1]} << 16) |
         (std::uint32_t{bytes[at + 2]} << 8) | std::uint32_t{bytes[at + 3]};
}

void append_be32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  out.push_back(static_cast<std::uint8_t>(v >> 24));
  out.push_back(static_cast<std::uint8_t>(v >> 16));
  out.push_back(static_cast<std::uint8_t>(v >> 8));
  out.push_back(static_cast<std::uint8_t>(v));
}

std::size_t rank_for_magic(std::uint32_t magic) {
  switch (magic) {
    case kIdxImagesMagic:
      return 3;
    case kIdxLabelsMagic:
      return 1;
    default:
      return 0;
  }
}

}  // namespace

std::size_t IdxTensor::element_count() const {
  std::size_t n = 1;
  for (auto d : dims) n *= d;
  return n;
}

IdxTensor parse_idx(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < 4) throw FormatError("IDX: file shorter than magic number");
  IdxTensor t;
  t.magic = read_be32(bytes, 0);
  const std::size_t rank = rank_for_magic(t.magic);
  if (rank == 0) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "0x%08X", t.magic);
    throw FormatError(std::string("IDX: unknown magic number ") + buf);
  }
  const std::size_t header = 4 + 4 * rank;
  if (bytes.size() < header) throw FormatError("IDX: truncated header");
  for (std::size_t i = 0; i < rank; ++i) t.dims.push_back(read_be32(bytes, 4 + 4 * i));
  const std::size_t expected = t.element_count();
  const std::size_t payload = bytes.size() - header;
  if (payload < expected) {
    throw FormatError("IDX: truncated payload (" + std::to_string(payload) +
                      " of " + std::to_string(expected) + " bytes)");
  }
  if (payload > expected) {
    throw FormatError("IDX: " + std::to_string(payload - expected) +
                      " trailing bytes after payload");
  }
  t.data.assign(bytes.begin() + static_cast<std::ptrdiff_t>(header), bytes.end());
  return t;
}

IdxTensor load_idx(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("IDX: cannot open " + path.string());
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  try {
    return parse_idx(bytes);
  } catch (const FormatError& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
}

std::vector<std::uint8_t> encode_idx(const IdxTensor& tensor) {
  if (rank_for_magic(tensor.magic) != tensor.dims.size()) {
    throw FormatError("IDX: magic does not match dimension count");
  }
  if (tensor.data.size() != tensor.element_count()) {
    throw FormatError("IDX: payload length does not match dimensions");
  }
  std::vector<std::uint8_t> out;
  out.reserve(4 + 4 * tensor.dims.size() + tensor.data.size());
  append_be32(out, tensor.magic);
  for (auto d : tensor.dims) append_be32(out, d);
  out.insert(out.end(), tensor.data.begin(), tensor.data.end());
  return out;
}

void write_idx(const std::filesystem::path& path, const IdxTensor& tensor) {
  const auto bytes = encode_idx(tensor);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw FormatError("IDX: cannot write " + path.string());
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
}

}  // namespace fedround
