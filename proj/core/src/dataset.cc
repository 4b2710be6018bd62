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

#include "fedround/dataset.h"

#include "fedround/errors.h"

namespace fedround {

Dataset Dataset::subset(std::span<const std::size_t> indices) const {
  Dataset out;
  out.n_classes = n_classes;
  out.features.resize(static_cast<Eigen::Index>(indices.size()), features.cols());
  out.labels.reserve(indices.size());
  for (std::size_t i = 0; i < indices.size(); ++i) {
    if (indices[i] >= size()) throw ParameterError("subset index out of range");
    out.features.row(static_cast<Eigen::Index>(i)) =
        features.row(static_cast<Eigen::Index>(indices[i]));
    out.labels.push_back(labels[indices[i]]);
  }
  return out;
}

void Dataset::validate() const {
  if (n_classes <= 0) throw ConsistencyError("dataset: n_classes must be positive");
  if (static_cast<std::size_t>(features.rows()) != labels.size()) {
    throw ConsistencyError("dataset: feature rows and label count differ");
  }
  for (int y : labels) {
    if (y < 0 || y >= n_classes) throw ConsistencyError("dataset: label out of range");
  }
  if (features.size() > 0 &&
      (features.minCoeff() < 0.0 || features.maxCoeff() > 1.0)) {
    throw ConsistencyError("dataset: feature outside [0, 1]");
  }
}

Matrix normalize(const IdxTensor& images) {
  if (images.magic != kIdxImagesMagic || images.dims.size() != 3) {
    throw FormatError("normalize: expected a 3-d image tensor");
  }
  const Eigen::Index n = images.dims[0];
  const Eigen::Index width = static_cast<Eigen::Index>(images.dims[1]) * images.dims[2];
  Matrix out(n, width);
  const std::uint8_t* px = images.data.data();
  for (Eigen::Index i = 0; i < out.size(); ++i) out.data()[i] = px[i] / 255.0;
  return out;
}

std::vector<int> labels_from_idx(const IdxTensor& labels) {
  if (labels.magic != kIdxLabelsMagic || labels.dims.size() != 1) {
    throw FormatError("expected a 1-d label tensor");
  }
  return {labels.data.begin(), labels.data.end()};
}

MnistFiles MnistFiles::in(const std::filesystem::path& dir) {
  return {dir / "train-images-idx3-ubyte", dir / "train-labels-idx1-ubyte",
          dir / "t10k-images-idx3-ubyte", dir / "t10k-labels-idx1-ubyte"};
}

Dataset make_dataset(const IdxTensor& images, const IdxTensor& labels,
                     const std::string& what) {
  Dataset d;
  d.features = normalize(images);
  d.labels = labels_from_idx(labels);
  d.n_classes = 10;
  if (d.labels.size() != static_cast<std::size_t>(d.features.rows())) {
    throw FormatError(what + ": image count " + std::to_string(d.features.rows()) +
                      " does not match label count " + std::to_string(d.labels.size()));
  }
  for (int y : d.labels) {
    if (y > 9) throw FormatError(what + ": label " + std::to_string(y) + " out of range");
  }
  return d;
}

TrainTest load_mnist(const std::filesystem::path& dir) {
  const auto files = MnistFiles::in(dir);
  TrainTest tt;
  tt.train = make_dataset(load_idx(files.train_images), load_idx(files.train_labels),
                          files.train_images.string());
  tt.test = make_dataset(load_idx(files.test_images), load_idx(files.test_labels),
                         files.test_images.string());
  return tt;
}

}  // namespace fedround
