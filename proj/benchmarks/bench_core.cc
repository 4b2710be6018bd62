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

#include <benchmark/benchmark.h>

#include <random>

#include "fedround/fedavg.h"
#include "fedround/metrics.h"
#include "fedround/model.h"
#include "fedround/network.h"
#include "fedround/partition.h"
#include "fedround/trainer.h"

namespace fedround {
namespace {

Matrix random_batch(std::size_t rows, std::size_t cols, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Matrix m(rows, cols);
  for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = u(rng);
  return m;
}

std::vector<int> random_labels(std::size_t n, int classes, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> d(0, classes - 1);
  std::vector<int> y(n);
  for (auto& v : y) v = d(rng);
  return y;
}

void BM_Forward(benchmark::State& state) {
  const auto batch = static_cast<std::size_t>(state.range(0));
  const auto w = init_weights(ModelSpec{}, 1);
  const auto x = random_batch(batch, 784, 2);
  for (auto _ : state) benchmark::DoNotOptimize(forward(w, x));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(batch));
}
BENCHMARK(BM_Forward)->Arg(10)->Arg(32)->Arg(10000);

void BM_LossAndGrad(benchmark::State& state) {
  const auto batch = static_cast<std::size_t>(state.range(0));
  const auto w = init_weights(ModelSpec{}, 1);
  const auto x = random_batch(batch, 784, 2);
  const auto y = random_labels(batch, 10, 3);
  for (auto _ : state) benchmark::DoNotOptimize(loss_and_grad(w, x, y));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(batch));
}
BENCHMARK(BM_LossAndGrad)->Arg(10)->Arg(32);

// One client's local work in a basic FL round: 600 samples, 5 epochs, batch 10.
void BM_LocalRound(benchmark::State& state) {
  Dataset d{random_batch(600, 784, 4), random_labels(600, 10, 5), 10};
  const auto w = init_weights(ModelSpec{}, 1);
  TrainingConfig cfg;
  cfg.batch_size = 10;
  cfg.epochs = 5;
  for (auto _ : state) benchmark::DoNotOptimize(train_local(w, d, cfg));
}
BENCHMARK(BM_LocalRound)->Unit(benchmark::kMillisecond);

void BM_FedAvg(benchmark::State& state) {
  const auto k = static_cast<std::size_t>(state.range(0));
  std::vector<ClientUpdate> updates;
  for (std::size_t c = 0; c < k; ++c)
    updates.push_back({client_id(c, k), 0, init_weights(ModelSpec{}, c), 600});
  for (auto _ : state) benchmark::DoNotOptimize(fed_avg(updates));
}
BENCHMARK(BM_FedAvg)->Arg(3)->Arg(10)->Arg(50);

void BM_AurocBinary(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto s = random_batch(n, 1, 6);
  const std::vector<double> scores(s.data(), s.data() + n);
  const auto y = random_labels(n, 2, 7);
  for (auto _ : state) benchmark::DoNotOptimize(auroc_binary(scores, y));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n));
}
BENCHMARK(BM_AurocBinary)->Arg(1000)->Arg(10000)->Arg(100000);

void BM_AurocMacro(benchmark::State& state) {
  Matrix p = random_batch(10000, 10, 8);
  for (Eigen::Index i = 0; i < p.rows(); ++i) p.row(i) /= p.row(i).sum();
  const auto y = random_labels(10000, 10, 9);
  for (auto _ : state) benchmark::DoNotOptimize(auroc_macro_ovr(p, y));
}
BENCHMARK(BM_AurocMacro)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace fedround

BENCHMARK_MAIN();
