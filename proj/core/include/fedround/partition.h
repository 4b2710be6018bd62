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

#ifndef FEDROUND_PARTITION_H_
#define FEDROUND_PARTITION_H_

#include <cstddef>
#include <cstdint>
#include <map>
#include <nlohmann/json.hpp>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace fedround {

// Every client draws `per_client` indices uniformly without replacement from
// the whole dataset. Different clients may share samples.
struct IidFixed {
  std::size_t n_clients = 10;
  std::size_t per_client = 600;
};

// Like IidFixed but with one size per client.
struct Imbalanced {
  std::vector<std::size_t> sizes;
};

// Client i draws `per_client` samples only from class `classes[i]`.
struct Skewed {
  std::vector<int> classes;
  std::size_t per_client = 600;
};

// Client i draws `sizes[i]` samples only from class `classes[i]`.
struct ImbalancedSkewed {
  std::vector<int> classes;
  std::vector<std::size_t> sizes;
};

// A global shuffle cut into consecutive disjoint blocks of floor(f_i * n);
// the last client also takes the remainder.
struct Fractions {
  std::vector<double> fractions;
};

using PartitionVariant = std::variant<IidFixed, Imbalanced, Skewed, ImbalancedSkewed, Fractions>;

struct PartitionScheme {
  PartitionVariant variant;
  std::uint64_t seed = 0;

  std::size_t n_clients() const;
  std::string name() const;
  // Throws ParameterError when the scheme's own invariants do not hold.
  void validate() const;
};

// Ladder 150, 250, ..., 1050: mean 600 per client.
std::vector<std::size_t> default_imbalanced_sizes();

// "client_00", "client_01", ... zero-padded so lexical order equals index
// order.
std::string client_id(std::size_t index, std::size_t n_clients);
std::vector<std::string> client_ids(std::size_t n_clients);

struct Partition {
  std::map<std::string, std::vector<std::size_t>> shards;

  std::vector<std::string> ids() const;
  bool operator==(const Partition&) const = default;
};

// Deterministic for a fixed (scheme, labels). Throws ParameterError if a
// requested size exceeds the population it is drawn from.
Partition make_partition(const PartitionScheme& scheme, std::span<const int> labels);

nlohmann::json scheme_to_json(const PartitionScheme& scheme);
PartitionScheme scheme_from_json(const nlohmann::json& j);

// {"scheme": {...}, "seed": s, "shards": {"client_00": [...], ...}}
nlohmann::json partition_to_json(const PartitionScheme& scheme, const Partition& partition);
Partition partition_from_json(const nlohmann::json& j);

}  // namespace fedround

#endif  // FEDROUND_PARTITION_H_
