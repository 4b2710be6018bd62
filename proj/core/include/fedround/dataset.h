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

#ifndef FEDROUND_DATASET_H_
#define FEDROUND_DATASET_H_

#include <Eigen/Core>
#include <cstddef>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "fedround/idx.h"

namespace fedround {

// Row-major so each sample is one contiguous row.
using Matrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

struct Dataset {
  Matrix features;          // n_samples x n_features, values in [0, 1]
  std::vector<int> labels;  // one class in [0, n_classes) per row
  int n_classes = 0;

  std::size_t size() const { return labels.size(); }
  std::size_t n_features() const { return static_cast<std::size_t>(features.cols()); }

  // Rows `indices` in the given order.
  Dataset subset(std::span<const std::size_t> indices) const;

  // Throws ConsistencyError if any invariant is violated.
  void validate() const;
};

// Flattens each image row-major and scales pixels by 1/255.
Matrix normalize(const IdxTensor& images);

std::vector<int> labels_from_idx(const IdxTensor& labels);

// Canonical MNIST file names inside a data directory.
struct MnistFiles {
  std::filesystem::path train_images;
  std::filesystem::path train_labels;
  std::filesystem::path test_images;
  std::filesystem::path test_labels;

  static MnistFiles in(const std::filesystem::path& dir);
};

inline constexpr std::size_t kMnistTrainCount = 60000;
inline constexpr std::size_t kMnistTestCount = 10000;

struct TrainTest {
  Dataset train;
  Dataset test;
};

// Loads and normalizes the four IDX files. Throws FormatError naming the
// offending file when one is missing, malformed, or inconsistent.
TrainTest load_mnist(const std::filesystem::path& dir);

Dataset make_dataset(const IdxTensor& images, const IdxTensor& labels,
                     const std::string& what);

}  // namespace fedround

#endif  // FEDROUND_DATASET_H_
