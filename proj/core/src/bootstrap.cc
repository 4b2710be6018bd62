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

#include "fedround/bootstrap.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "fedround/errors.h"
#include "fedround/rng.h"

namespace fedround {

double percentile(std::vector<double> values, double q) {
  if (values.empty()) throw ParameterError("percentile of an empty sample");
  if (!(q >= 0.0 && q <= 1.0)) throw ParameterError("percentile rank must lie in [0, 1]");
  std::sort(values.begin(), values.end());
  const double pos = q * static_cast<double>(values.size() - 1);
  const auto below = static_cast<std::size_t>(std::floor(pos));
  const std::size_t above = std::min(below + 1, values.size() - 1);
  const double frac = pos - static_cast<double>(below);
  if (frac == 0.0) return values[below];
  return values[below] + frac * (values[above] - values[below]);
}

BootstrapResult bootstrap(const ResampleEvaluator& evaluator, std::size_t n, std::size_t k,
                          std::uint64_t seed) {
  if (k < 2) throw ParameterError("bootstrap needs at least 2 resamples");
  if (n == 0) throw ParameterError("bootstrap of an empty test set");

  BootstrapResult result;
  result.resamples = k;
  std::vector<std::vector<double>> samples;  // [metric][resample]
  std::vector<std::size_t> indices(n);
  for (std::size_t r = 0; r < k; ++r) {
    for (std::uint64_t attempt = 0;; ++attempt) {
      Rng rng(derive_seed(seed, {r, attempt}));
      for (auto& i : indices) i = static_cast<std::size_t>(rng.below(n));
      std::vector<double> values;
      try {
        values = evaluator(indices);
      } catch (const UndefinedMetricError&) {
        // More undefined draws than resamples means the final ratio is
        // already above one half.
        if (++result.redraws > k) {
          throw EvaluationError("bootstrap: metric undefined on more than half of the draws");
        }
        continue;
      }
      if (samples.empty()) samples.resize(values.size());
      if (values.size() != samples.size()) {
        throw ParameterError("bootstrap: evaluator returned a varying number of metrics");
      }
      for (std::size_t m = 0; m < values.size(); ++m) samples[m].push_back(values[m]);
      break;
    }
  }
  if (2 * result.redraws > k + result.redraws) {
    throw EvaluationError("bootstrap: metric undefined on " + std::to_string(result.redraws) +
                          " of " + std::to_string(k + result.redraws) + " draws");
  }
  for (auto& s : samples) result.intervals.push_back({percentile(s, 0.025), percentile(s, 0.975)});
  return result;
}

Interval bootstrap_ci(const std::function<double(std::span<const std::size_t>)>& metric,
                      std::size_t n, std::size_t k, std::uint64_t seed, std::size_t* redraws) {
  auto r = bootstrap([&](std::span<const std::size_t> idx) { return std::vector<double>{metric(idx)}; },
                     n, k, seed);
  if (redraws) *redraws = r.redraws;
  return r.intervals.front();
}

}  // namespace fedround
