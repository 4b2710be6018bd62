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

#ifndef FEDROUND_TRAINER_H_
#define FEDROUND_TRAINER_H_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>

#include "fedround/dataset.h"
#include "fedround/model.h"

namespace fedround {

struct EarlyStopping {
  std::size_t patience = 10;
  double min_delta = 1e-4;
  double validation_fraction = 0.1;
};

struct TrainingConfig {
  std::size_t batch_size = 10;
  std::size_t epochs = 5;
  double learning_rate = 0.1;
  std::optional<EarlyStopping> early_stopping;
  std::uint64_t shuffle_seed = 0;
};

struct EpochStats {
  std::size_t epoch = 0;  // 1-based
  double mean_loss = 0.0;
  std::optional<double> validation_accuracy;
};

struct TrainResult {
  WeightVector weights;
  std::size_t n_samples = 0;  // samples trained on; the FedAVG weight
  std::size_t epochs_run = 0;
  std::optional<double> best_validation_accuracy;
};

using EpochObserver = std::function<void(const EpochStats&)>;

// Minibatch SGD on softmax cross-entropy. Each epoch walks a fresh
// permutation drawn from a stream keyed by (shuffle_seed, epoch); the final
// partial batch is kept. With early stopping, a validation_fraction hold-out
// is split off once, training stops after `patience` epochs without a
// validation-accuracy gain of more than min_delta, and the best weights are
// returned.
//
// Throws ParameterError for an empty dataset or a batch larger than the
// training split, DivergenceError when the loss becomes NaN or infinite.
TrainResult train_local(const WeightVector& initial, const Dataset& data,
                        const TrainingConfig& config,
                        const EpochObserver& observer = {});

}  // namespace fedround

#endif  // FEDROUND_TRAINER_H_
