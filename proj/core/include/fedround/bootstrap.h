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

#ifndef FEDROUND_BOOTSTRAP_H_
#define FEDROUND_BOOTSTRAP_H_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace fedround {

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};

// Evaluates one or more metrics on a resample, given as row indices into the
// test set. Throws UndefinedMetricError when a metric has no value there.
using ResampleEvaluator = std::function<std::vector<double>(std::span<const std::size_t>)>;

struct BootstrapResult {
  std::vector<Interval> intervals;  // one per evaluator output
  std::size_t resamples = 0;
  std::size_t redraws = 0;  // draws discarded as undefined
};

// Percentile of `values` with linear interpolation between the closest order
// statistics: position q * (n - 1) in the sorted sample. q in [0, 1].
double percentile(std::vector<double> values, double q);

// K resamples of n indices drawn with replacement; resample k uses a stream
// keyed by (seed, k, attempt), so the result does not depend on evaluation
// order. Undefined draws are redrawn. Returns the 2.5th and 97.5th
// percentiles of each metric.
//
// Throws ParameterError when k < 2 or n == 0, EvaluationError when more than
// half of all draws were undefined.
BootstrapResult bootstrap(const ResampleEvaluator& evaluator, std::size_t n, std::size_t k,
                          std::uint64_t seed);

// Single-metric convenience wrapper.
Interval bootstrap_ci(const std::function<double(std::span<const std::size_t>)>& metric,
                      std::size_t n, std::size_t k, std::uint64_t seed,
                      std::size_t* redraws = nullptr);

}  // namespace fedround

#endif  // FEDROUND_BOOTSTRAP_H_
