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

#ifndef FEDROUND_METRICS_H_
#define FEDROUND_METRICS_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "fedround/dataset.h"

namespace fedround {

// rows = true class, columns = predicted class
class ConfusionMatrix {
 public:
  explicit ConfusionMatrix(int n_classes);
  ConfusionMatrix(std::vector<std::vector<std::int64_t>> counts);

  int n_classes() const { return n_; }
  std::int64_t at(int truth, int predicted) const { return counts_[idx(truth, predicted)]; }
  void add(int truth, int predicted, std::int64_t count = 1);
  std::int64_t total() const;
  std::int64_t trace() const;
  std::vector<std::vector<std::int64_t>> rows() const;

  bool operator==(const ConfusionMatrix&) const = default;

 private:
  std::size_t idx(int truth, int predicted) const;
  int n_;
  std::vector<std::int64_t> counts_;
};

// Throws ParameterError on unequal lengths or a label outside [0, n_classes).
ConfusionMatrix confusion_matrix(std::span<const int> truth, std::span<const int> predicted,
                                 int n_classes);

// 2PR / (P + R); a zero denominator anywhere yields 0.
double f1(const ConfusionMatrix& cm, int cls);
std::vector<double> per_class_f1(const ConfusionMatrix& cm);
// Unweighted mean of per-class F1.
double macro_f1(const ConfusionMatrix& cm);
// Classes with no true and no predicted samples; they enter macro F1 as 0.
std::vector<int> absent_classes(const ConfusionMatrix& cm);
double accuracy(const ConfusionMatrix& cm);

// Probability that a random positive scores above a random negative, ties
// counted one half. O(n log n) via average ranks. Throws UndefinedMetricError
// unless both classes are present.
double auroc_binary(std::span<const double> scores, std::span<const int> labels);

// Mean over classes of auroc_binary(column c, label == c).
double auroc_macro_ovr(const Matrix& probabilities, std::span<const int> labels);

// Average precision: sum over distinct score thresholds (descending) of
// precision at the threshold times the recall gained there. Throws
// UndefinedMetricError when there are no positives.
double auprc(std::span<const double> scores, std::span<const int> labels);

struct CurvePoint {
  double x = 0.0;
  double y = 0.0;
};
// (FPR, TPR) and (recall, precision) points, one per distinct threshold.
std::vector<CurvePoint> roc_curve(std::span<const double> scores, std::span<const int> labels);
std::vector<CurvePoint> pr_curve(std::span<const double> scores, std::span<const int> labels);

}  // namespace fedround

#endif  // FEDROUND_METRICS_H_
