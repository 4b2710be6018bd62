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

#include "fedround/trainer.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "fedround/errors.h"
#include "fedround/network.h"
#include "fedround/rng.h"

namespace fedround {
namespace {

constexpr std::uint64_t kValidationStream = 0x76616c6964ULL;  // "valid"

double split_accuracy(const DenseNetwork& net, const Dataset& data) {
  const Matrix probs = net.forward(data.features);
  std::size_t hits = 0;
  for (Eigen::Index i = 0; i < probs.rows(); ++i) {
    hits += argmax_row(probs.row(i)) == data.labels[static_cast<std::size_t>(i)];
  }
  return static_cast<double>(hits) / static_cast<double>(data.size());
}

}  // namespace

TrainResult train_local(const WeightVector& initial, const Dataset& data,
                        const TrainingConfig& config, const EpochObserver& observer) {
  if (data.size() == 0) throw ParameterError("train_local: empty dataset");
  if (config.batch_size == 0) throw ParameterError("train_local: batch_size must be positive");
  if (!(config.learning_rate > 0.0)) {
    throw ParameterError("train_local: learning_rate must be positive");
  }

  Dataset train_split;
  Dataset validation;
  const Dataset* train = &data;
  if (config.early_stopping) {
    const auto& es = *config.early_stopping;
    if (!(es.validation_fraction > 0.0 && es.validation_fraction < 1.0)) {
      throw ParameterError("train_local: validation_fraction must lie in (0, 1)");
    }
    if (es.patience == 0) throw ParameterError("train_local: patience must be positive");
    const auto n_val = std::max<std::size_t>(
        1, static_cast<std::size_t>(es.validation_fraction * static_cast<double>(data.size())));
    if (n_val >= data.size()) {
      throw ParameterError("train_local: validation split leaves no training data");
    }
    Rng rng(derive_seed(config.shuffle_seed, {kValidationStream}));
    const auto order = rng.permutation(data.size());
    validation = data.subset(std::span(order).first(n_val));
    train_split = data.subset(std::span(order).subspan(n_val));
    train = &train_split;
  }
  const std::size_t n = train->size();
  if (config.batch_size > n) {
    throw ParameterError("train_local: batch_size " + std::to_string(config.batch_size) +
                         " exceeds training set size " + std::to_string(n));
  }

  TrainResult result;
  result.n_samples = n;
  if (config.epochs == 0) {
    result.weights = initial;
    return result;
  }

  DenseNetwork net(initial);
  std::optional<WeightVector> best;
  double best_acc = -1.0;
  std::size_t stale_epochs = 0;

  const auto n_features = static_cast<Eigen::Index>(train->n_features());
  Matrix batch;
  std::vector<int> batch_labels;
  for (std::size_t epoch = 0; epoch < config.epochs; ++epoch) {
    Rng rng(derive_seed(config.shuffle_seed, {epoch}));
    const auto order = rng.permutation(n);
    double loss_sum = 0.0;
    for (std::size_t start = 0; start < n; start += config.batch_size) {
      const std::size_t len = std::min(config.batch_size, n - start);
      batch.resize(static_cast<Eigen::Index>(len), n_features);
      batch_labels.resize(len);
      for (std::size_t i = 0; i < len; ++i) {
        const std::size_t src = order[start + i];
        batch.row(static_cast<Eigen::Index>(i)) =
            train->features.row(static_cast<Eigen::Index>(src));
        batch_labels[i] = train->labels[src];
      }
      const double loss = net.compute_gradient(batch, batch_labels);
      if (!std::isfinite(loss)) {
        throw DivergenceError("train_local: loss became " + std::to_string(loss) +
                                  " in epoch " + std::to_string(epoch + 1),
                              epoch + 1);
      }
      loss_sum += loss * static_cast<double>(len);
      net.apply_gradient(config.learning_rate);
    }
    result.epochs_run = epoch + 1;

    EpochStats stats{epoch + 1, loss_sum / static_cast<double>(n), std::nullopt};
    bool stop = false;
    if (config.early_stopping) {
      const double acc = split_accuracy(net, validation);
      stats.validation_accuracy = acc;
      if (acc > best_acc + config.early_stopping->min_delta) {
        best_acc = acc;
        best = net.weights();
        stale_epochs = 0;
      } else if (++stale_epochs >= config.early_stopping->patience) {
        stop = true;
      }
    }
    if (observer) observer(stats);
    if (stop) break;
  }

  if (best) {
    result.weights = std::move(*best);
    result.best_validation_accuracy = best_acc;
  } else {
    result.weights = net.weights();
  }
  return result;
}

}  // namespace fedround
