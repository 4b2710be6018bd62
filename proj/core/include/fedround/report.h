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

#ifndef FEDROUND_REPORT_H_
#define FEDROUND_REPORT_H_

#include <cstddef>
#include <cstdint>
#include <map>
#include <nlohmann/json.hpp>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fedround/bootstrap.h"
#include "fedround/dataset.h"
#include "fedround/metrics.h"
#include "fedround/model.h"

namespace fedround {

struct BootstrapSettings {
  std::size_t resamples = 100;  // 0 skips confidence intervals
  std::uint64_t seed = 0;
};

struct MetricsReport {
  std::size_t n_samples = 0;
  int n_classes = 0;
  double accuracy = 0.0;
  ConfusionMatrix confusion{1};
  std::vector<double> per_class_f1;
  double macro_f1 = 0.0;
  double auroc = 0.0;
  std::string auroc_convention;  // "binary" or "macro_ovr"
  std::optional<double> auprc;   // binary tasks only
  std::vector<int> absent_classes;
  std::string f1_convention = "macro";
  std::string decision_rule = "argmax";
  // Keys: accuracy, macro_f1, auroc, auprc, and f1_class_<c> for binary tasks.
  std::map<std::string, Interval> ci;
  std::size_t bootstrap_resamples = 0;
  std::uint64_t bootstrap_seed = 0;
  std::size_t bootstrap_redraws = 0;
};

// Scores `probabilities` (one row per sample) against `labels`. Predictions
// are the row argmax with ties to the lowest class, which for two classes is
// the same as thresholding P(class 1) > 0.5.
MetricsReport evaluate_predictions(const Matrix& probabilities, std::span<const int> labels,
                                   const BootstrapSettings& bootstrap);

MetricsReport evaluate_model(const WeightVector& weights, const Dataset& test,
                             const BootstrapSettings& bootstrap);

nlohmann::json report_to_json(const MetricsReport& report);
MetricsReport report_from_json(const nlohmann::json& j);

// Aligned grid, rows = true class, columns = predicted class, thousands
// separated with commas.
std::string render_confusion(const ConfusionMatrix& cm);

struct ComparisonRow {
  std::string experiment;
  double auroc = 0.0;
  Interval auroc_ci;
  double f1 = 0.0;
  Interval f1_ci;
  std::optional<double> auprc;
  std::optional<Interval> auprc_ci;
};

ComparisonRow comparison_row(const std::string& experiment, const MetricsReport& report);

// Experiment | AUROC (lo, hi) | F1-score (lo, hi) [| AUPRC (lo, hi)].
// `digits` < 0 prints every value in shortest round-trip form, which
// parse_comparison() reads back exactly.
std::string render_comparison(std::span<const ComparisonRow> rows, int digits = 3);
std::vector<ComparisonRow> parse_comparison(const std::string& text);

nlohmann::json comparison_to_json(std::span<const ComparisonRow> rows);
std::vector<ComparisonRow> comparison_from_json(const nlohmann::json& j);

}  // namespace fedround

#endif  // FEDROUND_REPORT_H_
