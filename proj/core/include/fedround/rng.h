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

#ifndef FEDROUND_RNG_H_
#define FEDROUND_RNG_H_

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <random>
#include <span>
#include <string_view>
#include <vector>

namespace fedround {

// SplitMix64 finalizer. Used to derive independent stream seeds from
// (seed, counter...) tuples so results never depend on execution order.
std::uint64_t mix64(std::uint64_t x);

// 64-bit FNV-1a hash of a string.
std::uint64_t hash_string(std::string_view s);

// Folds every part into `seed` with mix64.
std::uint64_t derive_seed(std::uint64_t seed,
                          std::initializer_list<std::uint64_t> parts);

// Seed of the local-training stream of `client_id` in `round`.
std::uint64_t client_round_seed(std::uint64_t master_seed,
                                std::string_view client_id,
                                std::uint64_t round);

// Deterministic random source. The engine is std::mt19937_64, whose output
// sequence is fixed by the standard; the distributions below are implemented
// here because the standard library ones are implementation-defined.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  // Uniform in [0, 1) with 53 random bits.
  double uniform();

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Unbiased integer in [0, n). n must be positive.
  std::uint64_t below(std::uint64_t n);

  // Standard normal (Box-Muller, one value per call).
  double normal();

  template <typename T>
  void shuffle(std::span<T> values) {
    for (std::size_t i = values.size(); i > 1; --i) {
      std::size_t j = static_cast<std::size_t>(below(i));
      std::swap(values[i - 1], values[j]);
    }
  }

  // `k` distinct values from [0, n) in draw order (partial Fisher-Yates).
  std::vector<std::size_t> sample_without_replacement(std::size_t n,
                                                      std::size_t k);

  std::vector<std::size_t> permutation(std::size_t n);

 private:
  std::mt19937_64 engine_;
};

}  // namespace fedround

#endif  // FEDROUND_RNG_H_
