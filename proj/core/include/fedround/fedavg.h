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

#ifndef FEDROUND_FEDAVG_H_
#define FEDROUND_FEDAVG_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>

#include "fedround/model.h"

namespace fedround {

struct ClientUpdate {
  std::string client_id;
  std::uint64_t round = 0;
  WeightVector weights;
  std::size_t n_samples = 0;
};

enum class AggregationMode { kSampleWeighted, kUniform };

std::string_view to_string(AggregationMode mode);
// Accepts "sample_weighted" and "uniform"; throws ParameterError otherwise.
AggregationMode parse_aggregation_mode(std::string_view text);

// Coordinate-wise weighted mean of the client weights. Coefficients are
// n_k / sum(n) (sample weighted) or 1 / K (uniform). Updates are summed in
// ascending client_id order regardless of input order, so the result is
// bit-identical for any permutation of `updates`.
//
// Throws ParameterError on an empty list or n_samples == 0, and
// ConsistencyError on mixed rounds, mixed shapes, or duplicate client ids.
WeightVector fed_avg(std::span<const ClientUpdate> updates,
                     AggregationMode mode = AggregationMode::kSampleWeighted);

}  // namespace fedround

#endif  // FEDROUND_FEDAVG_H_
