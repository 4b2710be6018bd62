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

#ifndef FEDROUND_IDX_H_
#define FEDROUND_IDX_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

namespace fedround {

inline constexpr std::uint32_t kIdxImagesMagic = 0x00000803;
inline constexpr std::uint32_t kIdxLabelsMagic = 0x00000801;

// Contents of an unsigned-byte IDX file: magic, one length per dimension,
// and the row-major payload.
struct IdxTensor {
  std::uint32_t magic = 0;
  std::vector<std::uint32_t> dims;
  std::vector<std::uint8_t> data;

  std::size_t element_count() const;
  bool operator==(const IdxTensor&) const = default;
};

// Throws FormatError on an unknown magic, a short header, or a payload whose
// length differs from the product of the dimensions.
IdxTensor parse_idx(std::span<const std::uint8_t> bytes);
IdxTensor load_idx(const std::filesystem::path& path);

std::vector<std::uint8_t> encode_idx(const IdxTensor& tensor);
void write_idx(const std::filesystem::path& path, const IdxTensor& tensor);

}  // namespace fedround

#endif  // FEDROUND_IDX_H_
