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

#ifndef FEDROUND_MODEL_H_
#define FEDROUND_MODEL_H_

#include <cstddef>
#include <cstdint>
#include <vector>

namespace fedround {

// Dense feed-forward architecture: ReLU on every hidden layer, softmax on the
// output layer.
struct ModelSpec {
  std::vector<std::size_t> layer_sizes{784, 128, 10};

  // Sum over consecutive layer pairs of fan_in * fan_out + fan_out.
  std::size_t parameter_count() const;
  std::size_t input_size() const { return layer_sizes.front(); }
  std::size_t output_size() const { return layer_sizes.back(); }
  void validate() const;

  bool operator==(const ModelSpec&) const = default;
};

// All trainable parameters of one model, flattened in layer order: layer-1
// weight matrix (fan_in x fan_out, row-major), layer-1 biases, layer-2 matrix,
// layer-2 biases, and so on.
struct WeightVector {
  ModelSpec spec;
  std::vector<double> values;

  std::size_t size() const { return values.size(); }
  // Throws ShapeError on a length mismatch, ConsistencyError on NaN/Inf.
  void validate() const;

  bool operator==(const WeightVector&) const = default;
};

// Uniform Glorot initialization, weights in +-sqrt(6 / (fan_in + fan_out)),
// biases zero.
WeightVector init_weights(const ModelSpec& spec, std::uint64_t seed);

WeightVector zero_weights(const ModelSpec& spec);

}  // namespace fedround

#endif  // FEDROUND_MODEL_H_
