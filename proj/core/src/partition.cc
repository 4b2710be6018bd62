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

#include "fedround/partition.h"

#include <cmath>
#include <numeric>
#include <set>

#include "fedround/errors.h"
#include "fedround/rng.h"

namespace fedround {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void require_sizes(const std::vector<std::size_t>& sizes) {
  if (sizes.empty()) throw ParameterError("partition: no clients");
  for (auto s : sizes) {
    if (s == 0) throw ParameterError("partition: shard sizes must be at least 1");
  }
}

void require_classes(const std::vector<int>& classes) {
  if (classes.empty()) throw ParameterError("partition: empty class assignment");
  for (int c : classes) {
    if (c < 0) throw ParameterError("partition: negative class in assignment");
  }
}

std::vector<std::size_t> draw(Rng& rng, std::span<const std::size_t> pool, std::size_t k,
                              const std::string& what) {
  if (k > pool.size()) {
    throw ParameterError("partition: " + what + " requests " + std::to_string(k) +
                         " samples but only " + std::to_string(pool.size()) + " exist");
  }
  auto picks = rng.sample_without_replacement(pool.size(), k);
  for (auto& p : picks) p = pool[p];
  return picks;
}

Partition class_partition(const std::vector<int>& classes, const std::vector<std::size_t>& sizes,
                          std::uint64_t seed, std::span<const int> labels) {
  std::map<int, std::vector<std::size_t>> by_class;
  for (std::size_t i = 0; i < labels.size(); ++i) by_class[labels[i]].push_back(i);
  Partition out;
  for (std::size_t c = 0; c < classes.size(); ++c) {
    Rng rng(derive_seed(seed, {c}));
    const auto& pool = by_class[classes[c]];
    out.shards[client_id(c, classes.size())] =
        draw(rng, pool, sizes[c], "class " + std::to_string(classes[c]));
  }
  return out;
}

Partition sized_partition(const std::vector<std::size_t>& sizes, std::uint64_t seed,
                          std::span<const int> labels) {
  std::vector<std::size_t> all(labels.size());
  std::iota(all.begin(), all.end(), std::size_t{0});
  Partition out;
  for (std::size_t c = 0; c < sizes.size(); ++c) {
    Rng rng(derive_seed(seed, {c}));
    out.shards[client_id(c, sizes.size())] = draw(rng, all, sizes[c], "client " + std::to_string(c));
  }
  return out;
}

}  // namespace

std::vector<std::size_t> default_imbalanced_sizes() {
  return {150, 250, 350, 450, 550, 650, 750, 850, 950, 1050};
}

std::string client_id(std::size_t index, std::size_t n_clients) {
  std::size_t width = 2;
  for (std::size_t m = 100; m < n_clients; m *= 10) ++width;
  std::string digits = std::to_string(index);
  if (digits.size() < width) digits.insert(0, width - digits.size(), '0');
  return "client_" + digits;
}

std::vector<std::string> client_ids(std::size_t n_clients) {
  std::vector<std::string> ids;
  for (std::size_t i = 0; i < n_clients; ++i) ids.push_back(client_id(i, n_clients));
  return ids;
}

std::vector<std::string> Partition::ids() const {
  std::vector<std::string> out;
  for (const auto& [id, _] : shards) out.push_back(id);
  return out;
}

std::size_t PartitionScheme::n_clients() const {
  return std::visit(Overloaded{
                        [](const IidFixed& s) { return s.n_clients; },
                        [](const Imbalanced& s) { return s.sizes.size(); },
                        [](const Skewed& s) { return s.classes.size(); },
                        [](const ImbalancedSkewed& s) { return s.classes.size(); },
                        [](const Fractions& s) { return s.fractions.size(); },
                    },
                    variant);
}

std::string PartitionScheme::name() const {
  return std::visit(Overloaded{
                        [](const IidFixed&) { return "iid_fixed"; },
                        [](const Imbalanced&) { return "imbalanced"; },
                        [](const Skewed&) { return "skewed"; },
                        [](const ImbalancedSkewed&) { return "imbalanced_skewed"; },
                        [](const Fractions&) { return "fractions"; },
                    },
                    variant);
}

void PartitionScheme::validate() const {
  std::visit(Overloaded{
                 [](const IidFixed& s) {
                   if (s.n_clients == 0) throw ParameterError("iid_fixed: n_clients must be positive");
                   if (s.per_client == 0) throw ParameterError("iid_fixed: per_client must be positive");
                 },
                 [](const Imbalanced& s) { require_sizes(s.sizes); },
                 [](const Skewed& s) {
                   require_classes(s.classes);
                   if (s.per_client == 0) throw ParameterError("skewed: per_client must be positive");
                 },
                 [](const ImbalancedSkewed& s) {
                   require_classes(s.classes);
                   require_sizes(s.sizes);
                   if (s.classes.size() != s.sizes.size()) {
                     throw ParameterError("imbalanced_skewed: classes and sizes differ in length");
                   }
                 },
                 [](const Fractions& s) {
                   if (s.fractions.empty()) throw ParameterError("fractions: no clients");
                   double sum = 0.0;
                   for (double f : s.fractions) {
                     if (!(f > 0.0 && f <= 1.0)) throw ParameterError("fractions: each must lie in (0, 1]");
                     sum += f;
                   }
                   if (std::abs(sum - 1.0) > 1e-9) throw ParameterError("fractions must sum to 1");
                 },
             },
             variant);
}

Partition make_partition(const PartitionScheme& scheme, std::span<const int> labels) {
  scheme.validate();
  if (labels.empty()) throw ParameterError("partition: empty label list");
  const std::uint64_t seed = scheme.seed;
  return std::visit(
      Overloaded{
          [&](const IidFixed& s) {
            return sized_partition(std::vector<std::size_t>(s.n_clients, s.per_client), seed, labels);
          },
          [&](const Imbalanced& s) { return sized_partition(s.sizes, seed, labels); },
          [&](const Skewed& s) {
            return class_partition(s.classes, std::vector<std::size_t>(s.classes.size(), s.per_client),
                                   seed, labels);
          },
          [&](const ImbalancedSkewed& s) { return class_partition(s.classes, s.sizes, seed, labels); },
          [&](const Fractions& s) {
            const std::size_t n = labels.size();
            Rng rng(derive_seed(seed, {0}));
            const auto order = rng.permutation(n);
            Partition out;
            std::size_t start = 0;
            for (std::size_t c = 0; c < s.fractions.size(); ++c) {
              std::size_t len;
              if (c + 1 == s.fractions.size()) {
                len = n - start;
              } else {
                // The epsilon keeps exact products such as 0.29 * 100 from
                // flooring one below.
                len = static_cast<std::size_t>(
                    std::floor(s.fractions[c] * static_cast<double>(n) + 1e-9));
                len = std::min(len, n - start);
              }
              out.shards[client_id(c, s.fractions.size())] =
                  std::vector<std::size_t>(order.begin() + static_cast<std::ptrdiff_t>(start),
                                           order.begin() + static_cast<std::ptrdiff_t>(start + len));
              start += len;
            }
            return out;
          },
      },
      scheme.variant);
}

nlohmann::json scheme_to_json(const PartitionScheme& scheme) {
  nlohmann::json j = std::visit(
      Overloaded{
          [](const IidFixed& s) {
            return nlohmann::json{{"n_clients", s.n_clients}, {"per_client", s.per_client}};
          },
          [](const Imbalanced& s) { return nlohmann::json{{"sizes", s.sizes}}; },
          [](const Skewed& s) {
            return nlohmann::json{{"classes", s.classes}, {"per_client", s.per_client}};
          },
          [](const ImbalancedSkewed& s) {
            return nlohmann::json{{"classes", s.classes}, {"sizes", s.sizes}};
          },
          [](const Fractions& s) { return nlohmann::json{{"fractions", s.fractions}}; },
      },
      scheme.variant);
  j["variant"] = scheme.name();
  return j;
}

PartitionScheme scheme_from_json(const nlohmann::json& j) {
  try {
    const auto variant = j.at("variant").get<std::string>();
    PartitionScheme s;
    if (variant == "iid_fixed") {
      s.variant = IidFixed{j.at("n_clients").get<std::size_t>(), j.at("per_client").get<std::size_t>()};
    } else if (variant == "imbalanced") {
      s.variant = Imbalanced{j.at("sizes").get<std::vector<std::size_t>>()};
    } else if (variant == "skewed") {
      s.variant = Skewed{j.at("classes").get<std::vector<int>>(), j.at("per_client").get<std::size_t>()};
    } else if (variant == "imbalanced_skewed") {
      s.variant = ImbalancedSkewed{j.at("classes").get<std::vector<int>>(),
                                   j.at("sizes").get<std::vector<std::size_t>>()};
    } else if (variant == "fractions") {
      s.variant = Fractions{j.at("fractions").get<std::vector<double>>()};
    } else {
      throw FormatError("unknown partition variant '" + variant + "'");
    }
    return s;
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("partition scheme: ") + e.what());
  }
}

nlohmann::json partition_to_json(const PartitionScheme& scheme, const Partition& partition) {
  nlohmann::json shards = nlohmann::json::object();
  for (const auto& [id, idx] : partition.shards) shards[id] = idx;
  return {{"scheme", scheme_to_json(scheme)}, {"seed", scheme.seed}, {"shards", shards}};
}

Partition partition_from_json(const nlohmann::json& j) {
  try {
    Partition p;
    for (const auto& [id, idx] : j.at("shards").items()) {
      p.shards[id] = idx.get<std::vector<std::size_t>>();
    }
    return p;
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("partition: ") + e.what());
  }
}

}  // namespace fedround
