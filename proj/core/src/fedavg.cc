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

#include "fedround/fedavg.h"

#include <algorithm>
#include <vector>

#include "fedround/errors.h"

namespace fedround {

std::string_view to_string(AggregationMode mode) {
  return mode == AggregationMode::kUniform ? "uniform" : "sample_weighted";
}

AggregationMode parse_aggregation_mode(std::string_view text) {
  if (text == "sample_weighted") return AggregationMode::kSampleWeighted;
  if (text == "uniform") return AggregationMode::kUniform;
  throw ParameterError("unknown aggregation mode '" + std::string(text) + "'");
}

WeightVector fed_avg(std::span<const ClientUpdate> updates, AggregationMode mode) {
  if (updates.empty()) throw ParameterError("fed_avg: no updates");

  std::vector<const ClientUpdate*> sorted;
  sorted.reserve(updates.size());
  for (const auto& u : updates) sorted.push_back(&u);
  std::sort(sorted.begin(), sorted.end(),
            [](const ClientUpdate* a, const ClientUpdate* b) { return a->client_id < b->client_id; });

  const ClientUpdate& first = *sorted.front();
  double total = 0.0;
  for (std::size_t k = 0; k < sorted.size(); ++k) {
    const ClientUpdate& u = *sorted[k];
    if (u.n_samples == 0) throw ParameterError("fed_avg: update from " + u.client_id + " has n_samples 0");
    if (k > 0 && u.client_id == sorted[k - 1]->client_id) {
      throw ConsistencyError("fed_avg: duplicate client_id " + u.client_id);
    }
    if (u.round != first.round) throw ConsistencyError("fed_avg: updates from different rounds");
    if (u.weights.spec != first.weights.spec || u.weights.size() != first.weights.size()) {
      throw ConsistencyError("fed_avg: updates with different weight shapes");
    }
    total += static_cast<double>(u.n_samples);
  }

  std::vector<double> coeff(sorted.size());
  for (std::size_t k = 0; k < sorted.size(); ++k) {
    coeff[k] = mode == AggregationMode::kUniform
                   ? 1.0 / static_cast<double>(sorted.size())
                   : static_cast<double>(sorted[k]->n_samples) / total;
  }

  // Accumulate offsets from the first update: sum_k c_k w_k equals
  // w_0 + sum_{k>0} c_k (w_k - w_0) because the coefficients sum to one.
  // Identical inputs then reproduce themselves exactly. The result is clamped
  // to the per-coordinate input range, which contains the exact mean.
  WeightVector out = first.weights;
  const std::size_t dim = out.size();
  std::vector<double> lo(first.weights.values), hi(first.weights.values);
  for (std::size_t k = 1; k < sorted.size(); ++k) {
    const auto& w = sorted[k]->weights.values;
    const double c = coeff[k];
    for (std::size_t i = 0; i < dim; ++i) {
      const double base = first.weights.values[i];
      out.values[i] += c * (w[i] - base);
      lo[i] = std::min(lo[i], w[i]);
      hi[i] = std::max(hi[i], w[i]);
    }
  }
  for (std::size_t i = 0; i < dim; ++i) out.values[i] = std::clamp(out.values[i], lo[i], hi[i]);
  return out;
}

}  // namespace fedround
