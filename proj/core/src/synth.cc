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

#include "fedround/synth.h"

#include <cmath>
#include <string>

#include "fedround/errors.h"
#include "fedround/rng.h"

namespace fedround {

std::size_t SynthConfig::positive_count() const {
  return static_cast<std::size_t>(
      std::llround(positive_fraction * static_cast<double>(n_samples)));
}

void SynthConfig::validate() const {
  if (n_samples < 2) throw ParameterError("synth: n_samples must be at least 2");
  if (n_features < 1) throw ParameterError("synth: n_features must be positive");
  if (!(class_separation >= 0.0) || !std::isfinite(class_separation)) {
    throw ParameterError("synth: class_separation must be a nonnegative real");
  }
  if (!(positive_fraction > 0.0 && positive_fraction < 1.0)) {
    throw ParameterError("synth: positive_fraction must lie in (0, 1)");
  }
  const std::size_t pos = positive_count();
  if (pos < 1 || pos > n_samples - 1) {
    throw ParameterError("synth: derived positive count " + std::to_string(pos) +
                         " must be in [1, n_samples - 1]");
  }
}

Dataset synth_binary(const SynthConfig& config) {
  config.validate();
  const auto n = static_cast<Eigen::Index>(config.n_samples);
  const auto d = static_cast<Eigen::Index>(config.n_features);

  Rng label_rng(derive_seed(config.seed, {1}));
  std::vector<std::size_t> order = label_rng.permutation(config.n_samples);
  Dataset out;
  out.n_classes = 2;
  out.labels.assign(config.n_samples, 0);
  for (std::size_t i = 0; i < config.positive_count(); ++i) out.labels[order[i]] = 1;

  // Each mean is offset by sep/2 along the unit diagonal (1, ..., 1) / sqrt(d).
  const double offset = 0.5 * config.class_separation / std::sqrt(static_cast<double>(d));
  Rng feature_rng(derive_seed(config.seed, {2}));
  out.features.resize(n, d);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double shift = out.labels[static_cast<std::size_t>(i)] == 1 ? offset : -offset;
    for (Eigen::Index j = 0; j < d; ++j) out.features(i, j) = shift + feature_rng.normal();
  }

  const double lo = out.features.minCoeff();
  const double hi = out.features.maxCoeff();
  const double span = hi > lo ? hi - lo : 1.0;
  out.features = ((out.features.array() - lo) / span).matrix();
  // Guard the endpoints against rounding just outside [0, 1].
  out.features = out.features.cwiseMax(0.0).cwiseMin(1.0);
  return out;
}

}  // namespace fedround
