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

#include "fedround/model.h"

#include <cmath>
#include <string>

#include "fedround/errors.h"
#include "fedround/rng.h"

namespace fedround {

std::size_t ModelSpec::parameter_count() const {
  std::size_t n = 0;
  for (std::size_t l = 0; l + 1 < layer_sizes.size(); ++l) {
    n += layer_sizes[l] * layer_sizes[l + 1] + layer_sizes[l + 1];
  }
  return n;
}

void ModelSpec::validate() const {
  if (layer_sizes.size() < 2) throw ParameterError("model spec needs at least 2 layers");
  for (auto s : layer_sizes) {
    if (s == 0) throw ParameterError("model spec layer sizes must be positive");
  }
}

void WeightVector::validate() const {
  if (values.size() != spec.parameter_count()) {
    throw ShapeError("weight vector has " + std::to_string(values.size()) +
                     " values, model needs " + std::to_string(spec.parameter_count()));
  }
  for (double v : values) {
    if (!std::isfinite(v)) throw ConsistencyError("weight vector contains NaN or Inf");
  }
}

WeightVector init_weights(const ModelSpec& spec, std::uint64_t seed) {
  spec.validate();
  WeightVector w{spec, {}};
  w.values.reserve(spec.parameter_count());
  for (std::size_t l = 0; l + 1 < spec.layer_sizes.size(); ++l) {
    const std::size_t fan_in = spec.layer_sizes[l];
    const std::size_t fan_out = spec.layer_sizes[l + 1];
    const double limit = std::sqrt(6.0 / static_cast<double>(fan_in + fan_out));
    Rng rng(derive_seed(seed, {l}));
    for (std::size_t i = 0; i < fan_in * fan_out; ++i) {
      w.values.push_back(rng.uniform(-limit, limit));
    }
    w.values.insert(w.values.end(), fan_out, 0.0);
  }
  return w;
}

WeightVector zero_weights(const ModelSpec& spec) {
  spec.validate();
  return {spec, std::vector<double>(spec.parameter_count(), 0.0)};
}

}  // namespace fedround
