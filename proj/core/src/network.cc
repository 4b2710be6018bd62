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

#include "fedround/network.h"

#include <cmath>
#include <string>

#include "fedround/errors.h"

namespace fedround {
namespace {

// In-place row-wise softmax. Returns nothing; the caller owns the logits.
void softmax_rows(Matrix& z) {
  for (Eigen::Index i = 0; i < z.rows(); ++i) {
    auto row = z.row(i);
    const double m = row.maxCoeff();
    row = (row.array() - m).exp();
    row /= row.sum();
  }
}

}  // namespace

DenseNetwork::DenseNetwork(const WeightVector& weights) : spec_(weights.spec) {
  spec_.validate();
  weights.validate();
  const double* p = weights.values.data();
  for (std::size_t l = 0; l + 1 < spec_.layer_sizes.size(); ++l) {
    const auto fan_in = static_cast<Eigen::Index>(spec_.layer_sizes[l]);
    const auto fan_out = static_cast<Eigen::Index>(spec_.layer_sizes[l + 1]);
    Layer layer;
    layer.weight = Eigen::Map<const Matrix>(p, fan_in, fan_out);
    p += fan_in * fan_out;
    layer.bias = Eigen::Map<const Eigen::RowVectorXd>(p, fan_out);
    p += fan_out;
    layer.grad_weight = Matrix::Zero(fan_in, fan_out);
    layer.grad_bias = Eigen::RowVectorXd::Zero(fan_out);
    layers_.push_back(std::move(layer));
  }
  activations_.resize(layers_.size() + 1);
}

void DenseNetwork::check_batch(const Matrix& batch) const {
  if (static_cast<std::size_t>(batch.cols()) != spec_.input_size()) {
    throw ShapeError("batch has " + std::to_string(batch.cols()) +
                     " columns, model expects " + std::to_string(spec_.input_size()));
  }
}

Matrix DenseNetwork::forward(const Matrix& batch) const {
  check_batch(batch);
  Matrix a;
  for (std::size_t l = 0; l < layers_.size(); ++l) {
    const Matrix& in = l == 0 ? batch : a;
    Matrix z(in.rows(), layers_[l].weight.cols());
    z.noalias() = in * layers_[l].weight;
    z.rowwise() += layers_[l].bias;
    if (l + 1 < layers_.size()) z = z.cwiseMax(0.0);
    a = std::move(z);
  }
  softmax_rows(a);
  return a;
}

double DenseNetwork::compute_gradient(const Matrix& batch, std::span<const int> labels) {
  check_batch(batch);
  const Eigen::Index n = batch.rows();
  if (n == 0) throw ParameterError("loss_and_grad: empty batch");
  if (static_cast<std::size_t>(n) != labels.size()) {
    throw ShapeError("loss_and_grad: batch and label counts differ");
  }
  const auto n_out = static_cast<int>(spec_.output_size());
  for (int y : labels) {
    if (y < 0 || y >= n_out) throw ParameterError("loss_and_grad: label out of range");
  }

  activations_[0] = batch;
  for (std::size_t l = 0; l < layers_.size(); ++l) {
    Matrix& z = activations_[l + 1];
    z.resize(n, layers_[l].weight.cols());
    z.noalias() = activations_[l] * layers_[l].weight;
    z.rowwise() += layers_[l].bias;
    if (l + 1 < layers_.size()) z = z.cwiseMax(0.0);
  }

  // Output: turn logits into probabilities while accumulating the loss, then
  // into dL/dlogits = (p - onehot) / n.
  Matrix& delta = activations_.back();
  double loss = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    auto row = delta.row(i);
    const double m = row.maxCoeff();
    const double zy = row(labels[static_cast<std::size_t>(i)]);
    row = (row.array() - m).exp();
    const double s = row.sum();
    loss += m + std::log(s) - zy;
    row /= s;
    row(labels[static_cast<std::size_t>(i)]) -= 1.0;
  }
  const double inv_n = 1.0 / static_cast<double>(n);
  delta *= inv_n;

  Matrix upstream = std::move(delta);
  for (std::size_t l = layers_.size(); l-- > 0;) {
    Layer& layer = layers_[l];
    layer.grad_weight.noalias() = activations_[l].transpose() * upstream;
    layer.grad_bias = upstream.colwise().sum();
    if (l == 0) break;
    Matrix down(n, layer.weight.rows());
    down.noalias() = upstream * layer.weight.transpose();
    // ReLU derivative: activations_[l] holds the post-ReLU output.
    down = (activations_[l].array() > 0.0).select(down, 0.0);
    upstream = std::move(down);
  }
  return loss * inv_n;
}

void DenseNetwork::apply_gradient(double learning_rate) {
  for (auto& layer : layers_) {
    layer.weight.noalias() -= learning_rate * layer.grad_weight;
    layer.bias.noalias() -= learning_rate * layer.grad_bias;
  }
}

WeightVector DenseNetwork::weights() const {
  WeightVector w{spec_, {}};
  w.values.reserve(spec_.parameter_count());
  for (const auto& layer : layers_) {
    w.values.insert(w.values.end(), layer.weight.data(),
                    layer.weight.data() + layer.weight.size());
    w.values.insert(w.values.end(), layer.bias.data(),
                    layer.bias.data() + layer.bias.size());
  }
  return w;
}

std::vector<double> DenseNetwork::gradient() const {
  std::vector<double> g;
  g.reserve(spec_.parameter_count());
  for (const auto& layer : layers_) {
    g.insert(g.end(), layer.grad_weight.data(),
             layer.grad_weight.data() + layer.grad_weight.size());
    g.insert(g.end(), layer.grad_bias.data(), layer.grad_bias.data() + layer.grad_bias.size());
  }
  return g;
}

Matrix forward(const WeightVector& weights, const Matrix& batch) {
  return DenseNetwork(weights).forward(batch);
}

LossAndGrad loss_and_grad(const WeightVector& weights, const Matrix& batch,
                          std::span<const int> labels) {
  DenseNetwork net(weights);
  LossAndGrad out;
  out.loss = net.compute_gradient(batch, labels);
  out.gradient = net.gradient();
  return out;
}

int argmax_row(const Eigen::Ref<const Eigen::RowVectorXd>& row) {
  int best = 0;
  for (Eigen::Index j = 1; j < row.size(); ++j) {
    if (row(j) > row(best)) best = static_cast<int>(j);
  }
  return best;
}

Prediction predict(const WeightVector& weights, const Matrix& features) {
  Prediction out;
  out.probabilities = forward(weights, features);
  out.classes.reserve(static_cast<std::size_t>(features.rows()));
  for (Eigen::Index i = 0; i < out.probabilities.rows(); ++i) {
    out.classes.push_back(argmax_row(out.probabilities.row(i)));
  }
  return out;
}

double accuracy(const WeightVector& weights, const Dataset& data) {
  if (data.size() == 0) return 0.0;
  const auto pred = predict(weights, data.features);
  std::size_t hits = 0;
  for (std::size_t i = 0; i < data.size(); ++i) hits += pred.classes[i] == data.labels[i];
  return static_cast<double>(hits) / static_cast<double>(data.size());
}

}  // namespace fedround
