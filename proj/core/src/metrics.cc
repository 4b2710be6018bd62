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

#include "fedround/metrics.h"

#include <algorithm>
#include <numeric>
#include <string>

#include "fedround/errors.h"

namespace fedround {
namespace {

void check_binary(std::span<const double> scores, std::span<const int> labels) {
  if (scores.size() != labels.size()) throw ParameterError("scores and labels differ in length");
  for (int y : labels) {
    if (y != 0 && y != 1) throw ParameterError("binary labels must be 0 or 1");
  }
}

// Indices sorted by descending score.
std::vector<std::size_t> descending(std::span<const double> scores) {
  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });
  return order;
}

}  // namespace

ConfusionMatrix::ConfusionMatrix(int n_classes) : n_(n_classes) {
  if (n_classes <= 0) throw ParameterError("confusion matrix needs at least one class");
  counts_.assign(static_cast<std::size_t>(n_) * static_cast<std::size_t>(n_), 0);
}

ConfusionMatrix::ConfusionMatrix(std::vector<std::vector<std::int64_t>> counts)
    : ConfusionMatrix(static_cast<int>(counts.size())) {
  for (int i = 0; i < n_; ++i) {
    if (counts[static_cast<std::size_t>(i)].size() != static_cast<std::size_t>(n_)) {
      throw ParameterError("confusion matrix must be square");
    }
    for (int j = 0; j < n_; ++j) {
      const auto c = counts[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
      if (c < 0) throw ParameterError("confusion counts must be nonnegative");
      counts_[idx(i, j)] = c;
    }
  }
}

std::size_t ConfusionMatrix::idx(int truth, int predicted) const {
  return static_cast<std::size_t>(truth) * static_cast<std::size_t>(n_) +
         static_cast<std::size_t>(predicted);
}

void ConfusionMatrix::add(int truth, int predicted, std::int64_t count) {
  if (truth < 0 || truth >= n_ || predicted < 0 || predicted >= n_) {
    throw ParameterError("label out of range for " + std::to_string(n_) + " classes");
  }
  counts_[idx(truth, predicted)] += count;
}

std::int64_t ConfusionMatrix::total() const {
  return std::accumulate(counts_.begin(), counts_.end(), std::int64_t{0});
}

std::int64_t ConfusionMatrix::trace() const {
  std::int64_t t = 0;
  for (int i = 0; i < n_; ++i) t += at(i, i);
  return t;
}

std::vector<std::vector<std::int64_t>> ConfusionMatrix::rows() const {
  std::vector<std::vector<std::int64_t>> out(static_cast<std::size_t>(n_));
  for (int i = 0; i < n_; ++i) {
    for (int j = 0; j < n_; ++j) out[static_cast<std::size_t>(i)].push_back(at(i, j));
  }
  return out;
}

ConfusionMatrix confusion_matrix(std::span<const int> truth, std::span<const int> predicted,
                                 int n_classes) {
  if (truth.size() != predicted.size()) {
    throw ParameterError("confusion_matrix: label sequences differ in length");
  }
  ConfusionMatrix cm(n_classes);
  for (std::size_t i = 0; i < truth.size(); ++i) cm.add(truth[i], predicted[i]);
  return cm;
}

double f1(const ConfusionMatrix& cm, int cls) {
  std::int64_t tp = cm.at(cls, cls), predicted = 0, actual = 0;
  for (int k = 0; k < cm.n_classes(); ++k) {
    predicted += cm.at(k, cls);
    actual += cm.at(cls, k);
  }
  if (predicted == 0 || actual == 0 || tp == 0) return 0.0;
  // 2PR / (P + R) simplifies to 2TP / (predicted + actual).
  return 2.0 * static_cast<double>(tp) / static_cast<double>(predicted + actual);
}

std::vector<double> per_class_f1(const ConfusionMatrix& cm) {
  std::vector<double> out;
  for (int c = 0; c < cm.n_classes(); ++c) out.push_back(f1(cm, c));
  return out;
}

double macro_f1(const ConfusionMatrix& cm) {
  const auto per = per_class_f1(cm);
  return std::accumulate(per.begin(), per.end(), 0.0) / static_cast<double>(per.size());
}

std::vector<int> absent_classes(const ConfusionMatrix& cm) {
  std::vector<int> out;
  for (int c = 0; c < cm.n_classes(); ++c) {
    std::int64_t seen = 0;
    for (int k = 0; k < cm.n_classes(); ++k) seen += cm.at(k, c) + cm.at(c, k);
    if (seen == 0) out.push_back(c);
  }
  return out;
}

double accuracy(const ConfusionMatrix& cm) {
  const auto n = cm.total();
  return n == 0 ? 0.0 : static_cast<double>(cm.trace()) / static_cast<double>(n);
}

double auroc_binary(std::span<const double> scores, std::span<const int> labels) {
  check_binary(scores, labels);
  const std::size_t n = scores.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });

  // Mann-Whitney U with tie groups: each positive wins against every negative
  // strictly below it and gets half credit for negatives in its tie group.
  // Counting in integers (in half units) keeps the result exact.
  std::int64_t n_pos = 0, n_neg = 0;
  std::int64_t twice_wins = 0;
  std::int64_t negatives_below = 0;
  for (std::size_t i = 0; i < n;) {
    std::size_t j = i;
    std::int64_t pos = 0, neg = 0;
    while (j < n && scores[order[j]] == scores[order[i]]) {
      (labels[order[j]] == 1 ? pos : neg) += 1;
      ++j;
    }
    twice_wins += pos * (2 * negatives_below + neg);
    negatives_below += neg;
    n_pos += pos;
    n_neg += neg;
    i = j;
  }
  if (n_pos == 0 || n_neg == 0) {
    throw UndefinedMetricError("AUROC needs at least one positive and one negative");
  }
  // Compute the smaller of AUROC and 1 - AUROC by division and the other by
  // subtraction; then auroc(s, y) + auroc(s, 1 - y) == 1 holds exactly.
  const std::int64_t twice_pairs = 2 * n_pos * n_neg;
  const double denom = static_cast<double>(twice_pairs);
  if (2 * twice_wins <= twice_pairs) return static_cast<double>(twice_wins) / denom;
  return 1.0 - static_cast<double>(twice_pairs - twice_wins) / denom;
}

double auroc_macro_ovr(const Matrix& probabilities, std::span<const int> labels) {
  if (static_cast<std::size_t>(probabilities.rows()) != labels.size()) {
    throw ParameterError("auroc_macro_ovr: probability rows and labels differ");
  }
  const auto n_classes = static_cast<int>(probabilities.cols());
  std::vector<double> column(labels.size());
  std::vector<int> is_class(labels.size());
  double sum = 0.0;
  for (int c = 0; c < n_classes; ++c) {
    for (std::size_t i = 0; i < labels.size(); ++i) {
      column[i] = probabilities(static_cast<Eigen::Index>(i), c);
      is_class[i] = labels[i] == c ? 1 : 0;
    }
    try {
      sum += auroc_binary(column, is_class);
    } catch (const UndefinedMetricError&) {
      throw UndefinedMetricError("macro AUROC: class " + std::to_string(c) +
                                 " is missing from the labels (or is the only class)");
    }
  }
  return sum / static_cast<double>(n_classes);
}

double auprc(std::span<const double> scores, std::span<const int> labels) {
  check_binary(scores, labels);
  const auto total_pos = std::count(labels.begin(), labels.end(), 1);
  if (total_pos == 0) throw UndefinedMetricError("AUPRC needs at least one positive");
  const auto order = descending(scores);
  double ap = 0.0;
  std::int64_t tp = 0, seen = 0;
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i;
    std::int64_t gained = 0;
    while (j < order.size() && scores[order[j]] == scores[order[i]]) {
      gained += labels[order[j]];
      ++j;
    }
    seen += static_cast<std::int64_t>(j - i);
    tp += gained;
    if (gained > 0) {
      ap += (static_cast<double>(tp) / static_cast<double>(seen)) *
            (static_cast<double>(gained) / static_cast<double>(total_pos));
    }
    i = j;
  }
  return ap;
}

std::vector<CurvePoint> roc_curve(std::span<const double> scores, std::span<const int> labels) {
  check_binary(scores, labels);
  const auto n_pos = std::count(labels.begin(), labels.end(), 1);
  const auto n_neg = static_cast<std::int64_t>(labels.size()) - n_pos;
  if (n_pos == 0 || n_neg == 0) throw UndefinedMetricError("ROC needs both classes");
  const auto order = descending(scores);
  std::vector<CurvePoint> out{{0.0, 0.0}};
  std::int64_t tp = 0, fp = 0;
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i;
    while (j < order.size() && scores[order[j]] == scores[order[i]]) {
      (labels[order[j]] == 1 ? tp : fp) += 1;
      ++j;
    }
    out.push_back({static_cast<double>(fp) / static_cast<double>(n_neg),
                   static_cast<double>(tp) / static_cast<double>(n_pos)});
    i = j;
  }
  return out;
}

std::vector<CurvePoint> pr_curve(std::span<const double> scores, std::span<const int> labels) {
  check_binary(scores, labels);
  const auto n_pos = std::count(labels.begin(), labels.end(), 1);
  if (n_pos == 0) throw UndefinedMetricError("PR curve needs at least one positive");
  const auto order = descending(scores);
  std::vector<CurvePoint> out;
  std::int64_t tp = 0, seen = 0;
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i;
    while (j < order.size() && scores[order[j]] == scores[order[i]]) {
      tp += labels[order[j]];
      ++j;
    }
    seen += static_cast<std::int64_t>(j - i);
    out.push_back({static_cast<double>(tp) / static_cast<double>(n_pos),
                   static_cast<double>(tp) / static_cast<double>(seen)});
    i = j;
  }
  return out;
}

}  // namespace fedround
