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

#ifndef FEDROUND_SYNTH_H_
#define FEDROUND_SYNTH_H_

#include <cstddef>
#include <cstdint>

#include "fedround/dataset.h"

namespace fedround {

// Two-class Gaussian task used in place of restricted clinical data.
struct SynthConfig {
  std::size_t n_samples = 4000;
  std::size_t n_features = 16;
  double class_separation = 6.0;  // distance between the two class means
  double positive_fraction = 0.115;
  std::uint64_t seed = 0;

  // round(positive_fraction * n_samples); validate() checks it is in [1, n-1].
  std::size_t positive_count() const;
  void validate() const;
};

// Unit-variance isotropic clusters whose means sit at -sep/2 and +sep/2 along
// the main diagonal. All features are then mapped into [0, 1] by one global
// affine transform, which preserves the cluster geometry. Labels are 0/1 with
// exactly positive_count() positives.
Dataset synth_binary(const SynthConfig& config);

}  // namespace fedround

#endif  // FEDROUND_SYNTH_H_
