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

#ifndef FEDROUND_NETWORK_H_
#define FEDROUND_NETWORK_H_

#include <Eigen/Core>
#include <span>
#include <vector>

#include "fedround/dataset.h"
#include "fedround/model.h"

namespace fedround {

// Working copy of a model in Eigen-owned storage. Training unpacks a
// WeightVector once, runs many SGD steps in place, then packs the result.
// Every buffer is allocated by Eigen so alignment, and therefore the exact
// floating-point result, does not depend on where the source vector lives.
class DenseNetwork {
 public:
  explicit DenseNetwork(const WeightVector& weights);

  const ModelSpec& spec() const { return spec_; }

  // Softmax probabilities, one row per input row.
  Matrix forward(const Matrix& batch) const;

  // Mean cross-entropy over the batch; leaves the gradient in internal
  // buffers for apply_gradient() / gradient().
  double compute_gradient(const Matrix& batch, std::span<const int> labels);

  // weights -= learning_rate * gradient
  void apply_gradient(double learning_rate);

  WeightVector weights() const;
  std::vector<double> gradient() const;

 private:
  struct Layer {
    Matrix weight;  // fan_in x fan_out
    Eigen::RowVectorXd bias;
    Matrix grad_weight;
    Eigen::RowVectorXd grad_bias;
  };

  void check_batch(const Matrix& batch) const;

  ModelSpec spec_;
  std::vector<Layer> layers_;
  std::vector<Matrix> activations_;
};

struct LossAndGrad {
  double loss = 0.0;
  std::vector<double> gradient;  // same layout as WeightVector::values
};

struct Prediction {
  std::vector<int> classes;  // argmax, ties to the lowest index
  Matrix probabilities;
};

Matrix forward(const WeightVector& weights, const Matrix& batch);
LossAndGrad loss_and_grad(const WeightVector& weights, const Matrix& batch,
                          std::span<const int> labels);
Prediction predict(const WeightVector& weights, const Matrix& features);

// Index of the largest entry; the first one wins on ties.
int argmax_row(const Eigen::Ref<const Eigen::RowVectorXd>& row);

double accuracy(const WeightVector& weights, const Dataset& data);

}  // namespace fedround

#endif  // FEDROUND_NETWORK_H_
