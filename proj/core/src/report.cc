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

#include "fedround/report.h"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <sstream>

#include "fedround/errors.h"
#include "fedround/network.h"

namespace fedround {
namespace {

// All scalar metrics for the rows `idx` (or every row when idx is empty and
// use_all is set). Order: accuracy, macro_f1, auroc, [auprc, f1_0, f1_1].
std::vector<double> scalar_metrics(const Matrix& probs, std::span<const int> labels,
                                   std::span<const int> predicted,
                                   std::span<const std::size_t> idx) {
  const int n_classes = static_cast<int>(probs.cols());
  const std::size_t n = idx.size();
  std::vector<int> y(n), yhat(n);
  for (std::size_t i = 0; i < n; ++i) {
    y[i] = labels[idx[i]];
    yhat[i] = predicted[idx[i]];
  }
  const auto cm = confusion_matrix(y, yhat, n_classes);
  std::vector<double> out{accuracy(cm), macro_f1(cm)};

  std::vector<double> column(n);
  std::vector<int> is_class(n);
  auto fill = [&](int c) {
    for (std::size_t i = 0; i < n; ++i) {
      column[i] = probs(static_cast<Eigen::Index>(idx[i]), c);
      is_class[i] = y[i] == c ? 1 : 0;
    }
  };
  if (n_classes == 2) {
    fill(1);
    out.push_back(auroc_binary(column, is_class));
    out.push_back(auprc(column, is_class));
    out.push_back(f1(cm, 0));
    out.push_back(f1(cm, 1));
  } else {
    double sum = 0.0;
    for (int c = 0; c < n_classes; ++c) {
      fill(c);
      sum += auroc_binary(column, is_class);
    }
    out.push_back(sum / n_classes);
  }
  return out;
}

std::string format_number(double v, int digits) {
  char buf[64];
  if (digits < 0) {
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, end);
  }
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

std::string format_with_ci(double v, const Interval& ci, int digits) {
  return format_number(v, digits) + " (" + format_number(ci.lo, digits) + ", " +
         format_number(ci.hi, digits) + ")";
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

double parse_number(const std::string& s) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) throw FormatError("bad number '" + s + "'");
  return v;
}

// "v (lo, hi)"
std::pair<double, Interval> parse_cell(const std::string& cell) {
  const auto open = cell.find(" (");
  const auto comma = cell.find(", ", open);
  const auto close = cell.rfind(')');
  if (open == std::string::npos || comma == std::string::npos || close == std::string::npos) {
    throw FormatError("bad table cell '" + cell + "'");
  }
  return {parse_number(cell.substr(0, open)),
          {parse_number(cell.substr(open + 2, comma - open - 2)),
           parse_number(cell.substr(comma + 2, close - comma - 2))}};
}

std::string with_commas(std::int64_t v) {
  std::string s = std::to_string(v);
  for (int i = static_cast<int>(s.size()) - 3; i > (v < 0 ? 1 : 0); i -= 3) s.insert(static_cast<std::size_t>(i), ",");
  return s;
}

nlohmann::json interval_json(const Interval& i) { return {{"lo", i.lo}, {"hi", i.hi}}; }
Interval interval_from(const nlohmann::json& j) { return {j.at("lo").get<double>(), j.at("hi").get<double>()}; }

}  // namespace

MetricsReport evaluate_predictions(const Matrix& probabilities, std::span<const int> labels,
                                   const BootstrapSettings& bootstrap_settings) {
  if (static_cast<std::size_t>(probabilities.rows()) != labels.size()) {
    throw ParameterError("evaluate: probability rows and labels differ");
  }
  if (labels.empty()) throw ParameterError("evaluate: empty test set");
  MetricsReport r;
  r.n_samples = labels.size();
  r.n_classes = static_cast<int>(probabilities.cols());
  std::vector<int> predicted;
  predicted.reserve(labels.size());
  for (Eigen::Index i = 0; i < probabilities.rows(); ++i) predicted.push_back(argmax_row(probabilities.row(i)));

  r.confusion = confusion_matrix(labels, predicted, r.n_classes);
  r.accuracy = accuracy(r.confusion);
  r.per_class_f1 = per_class_f1(r.confusion);
  r.macro_f1 = macro_f1(r.confusion);
  r.absent_classes = absent_classes(r.confusion);

  std::vector<std::size_t> all(labels.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  const auto point = scalar_metrics(probabilities, labels, predicted, all);
  r.auroc = point[2];
  r.auroc_convention = r.n_classes == 2 ? "binary" : "macro_ovr";
  if (r.n_classes == 2) r.auprc = point[3];

  r.bootstrap_resamples = bootstrap_settings.resamples;
  r.bootstrap_seed = bootstrap_settings.seed;
  if (bootstrap_settings.resamples > 0) {
    const auto boot = bootstrap(
        [&](std::span<const std::size_t> idx) { return scalar_metrics(probabilities, labels, predicted, idx); },
        labels.size(), bootstrap_settings.resamples, bootstrap_settings.seed);
    r.bootstrap_redraws = boot.redraws;
    r.ci["accuracy"] = boot.intervals[0];
    r.ci["macro_f1"] = boot.intervals[1];
    r.ci["auroc"] = boot.intervals[2];
    if (r.n_classes == 2) {
      r.ci["auprc"] = boot.intervals[3];
      r.ci["f1_class_0"] = boot.intervals[4];
      r.ci["f1_class_1"] = boot.intervals[5];
    }
  }
  return r;
}

MetricsReport evaluate_model(const WeightVector& weights, const Dataset& test,
                             const BootstrapSettings& bootstrap_settings) {
  return evaluate_predictions(forward(weights, test.features), test.labels, bootstrap_settings);
}

nlohmann::json report_to_json(const MetricsReport& r) {
  nlohmann::json ci = nlohmann::json::object();
  for (const auto& [k, v] : r.ci) ci[k] = interval_json(v);
  nlohmann::json j{{"n_samples", r.n_samples},
                   {"n_classes", r.n_classes},
                   {"accuracy", r.accuracy},
                   {"confusion", r.confusion.rows()},
                   {"per_class_f1", r.per_class_f1},
                   {"macro_f1", r.macro_f1},
                   {"auroc", r.auroc},
                   {"auroc_convention", r.auroc_convention},
                   {"f1_convention", r.f1_convention},
                   {"decision_rule", r.decision_rule},
                   {"absent_classes", r.absent_classes},
                   {"ci", ci},
                   {"bootstrap", {{"resamples", r.bootstrap_resamples},
                                  {"seed", r.bootstrap_seed},
                                  {"redraws", r.bootstrap_redraws}}}};
  j["auprc"] = r.auprc ? nlohmann::json(*r.auprc) : nlohmann::json(nullptr);
  return j;
}

MetricsReport report_from_json(const nlohmann::json& j) {
  try {
    MetricsReport r;
    r.n_samples = j.at("n_samples").get<std::size_t>();
    r.n_classes = j.at("n_classes").get<int>();
    r.accuracy = j.at("accuracy").get<double>();
    r.confusion = ConfusionMatrix(j.at("confusion").get<std::vector<std::vector<std::int64_t>>>());
    r.per_class_f1 = j.at("per_class_f1").get<std::vector<double>>();
    r.macro_f1 = j.at("macro_f1").get<double>();
    r.auroc = j.at("auroc").get<double>();
    r.auroc_convention = j.at("auroc_convention").get<std::string>();
    r.f1_convention = j.value("f1_convention", "macro");
    r.decision_rule = j.value("decision_rule", "argmax");
    r.absent_classes = j.value("absent_classes", std::vector<int>{});
    if (j.contains("auprc") && !j.at("auprc").is_null()) r.auprc = j.at("auprc").get<double>();
    for (const auto& [k, v] : j.at("ci").items()) r.ci[k] = interval_from(v);
    const auto& b = j.at("bootstrap");
    r.bootstrap_resamples = b.at("resamples").get<std::size_t>();
    r.bootstrap_seed = b.at("seed").get<std::uint64_t>();
    r.bootstrap_redraws = b.at("redraws").get<std::size_t>();
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("metrics report: ") + e.what());
  }
}

std::string render_confusion(const ConfusionMatrix& cm) {
  std::size_t width = 1;
  for (int i = 0; i < cm.n_classes(); ++i) {
    for (int j = 0; j < cm.n_classes(); ++j) width = std::max(width, with_commas(cm.at(i, j)).size());
  }
  std::ostringstream out;
  for (int i = 0; i < cm.n_classes(); ++i) {
    for (int j = 0; j < cm.n_classes(); ++j) {
      const auto cell = with_commas(cm.at(i, j));
      out << (j ? "  " : "") << std::string(width - cell.size(), ' ') << cell;
    }
    out << '\n';
  }
  return out.str();
}

ComparisonRow comparison_row(const std::string& experiment, const MetricsReport& report) {
  ComparisonRow row;
  row.experiment = experiment;
  row.auroc = report.auroc;
  row.f1 = report.macro_f1;
  auto ci = [&](const char* key, double point) {
    auto it = report.ci.find(key);
    return it == report.ci.end() ? Interval{point, point} : it->second;
  };
  row.auroc_ci = ci("auroc", report.auroc);
  row.f1_ci = ci("macro_f1", report.macro_f1);
  if (report.auprc) {
    row.auprc = report.auprc;
    row.auprc_ci = ci("auprc", *report.auprc);
  }
  return row;
}

std::string render_comparison(std::span<const ComparisonRow> rows, int digits) {
  const bool with_auprc =
      std::any_of(rows.begin(), rows.end(), [](const ComparisonRow& r) { return r.auprc.has_value(); });
  std::vector<std::vector<std::string>> cells{{"Experiment", "AUROC", "F1-score"}};
  if (with_auprc) cells[0].push_back("AUPRC");
  for (const auto& r : rows) {
    std::vector<std::string> line{r.experiment, format_with_ci(r.auroc, r.auroc_ci, digits),
                                  format_with_ci(r.f1, r.f1_ci, digits)};
    if (with_auprc) line.push_back(r.auprc ? format_with_ci(*r.auprc, *r.auprc_ci, digits) : "-");
    cells.push_back(std::move(line));
  }
  std::vector<std::size_t> widths(cells[0].size(), 0);
  for (const auto& line : cells) {
    for (std::size_t c = 0; c < line.size(); ++c) widths[c] = std::max(widths[c], line[c].size());
  }
  std::ostringstream out;
  for (std::size_t l = 0; l < cells.size(); ++l) {
    for (std::size_t c = 0; c < cells[l].size(); ++c) {
      out << (c ? " | " : "") << cells[l][c];
      if (c + 1 < cells[l].size()) out << std::string(widths[c] - cells[l][c].size(), ' ');
    }
    out << '\n';
    if (l == 0) {
      for (std::size_t c = 0; c < widths.size(); ++c) out << (c ? "-+-" : "") << std::string(widths[c], '-');
      out << '\n';
    }
  }
  return out.str();
}

std::vector<ComparisonRow> parse_comparison(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::vector<ComparisonRow> rows;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    if (line_no++ < 2 || trim(line).empty()) continue;  // header and rule
    std::vector<std::string> parts;
    std::size_t start = 0;
    for (std::size_t bar; (bar = line.find(" | ", start)) != std::string::npos; start = bar + 3) {
      parts.push_back(trim(line.substr(start, bar - start)));
    }
    parts.push_back(trim(line.substr(start)));
    if (parts.size() < 3) throw FormatError("comparison row needs at least 3 columns");
    ComparisonRow r;
    r.experiment = parts[0];
    std::tie(r.auroc, r.auroc_ci) = parse_cell(parts[1]);
    std::tie(r.f1, r.f1_ci) = parse_cell(parts[2]);
    if (parts.size() > 3 && parts[3] != "-") {
      auto [v, ci] = parse_cell(parts[3]);
      r.auprc = v;
      r.auprc_ci = ci;
    }
    rows.push_back(std::move(r));
  }
  return rows;
}

nlohmann::json comparison_to_json(std::span<const ComparisonRow> rows) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& r : rows) {
    nlohmann::json j{{"experiment", r.experiment},
                     {"auroc", r.auroc},
                     {"auroc_ci", interval_json(r.auroc_ci)},
                     {"f1", r.f1},
                     {"f1_ci", interval_json(r.f1_ci)}};
    if (r.auprc) {
      j["auprc"] = *r.auprc;
      j["auprc_ci"] = interval_json(*r.auprc_ci);
    }
    out.push_back(std::move(j));
  }
  return out;
}

std::vector<ComparisonRow> comparison_from_json(const nlohmann::json& j) {
  try {
    std::vector<ComparisonRow> rows;
    for (const auto& e : j) {
      ComparisonRow r;
      r.experiment = e.at("experiment").get<std::string>();
      r.auroc = e.at("auroc").get<double>();
      r.auroc_ci = interval_from(e.at("auroc_ci"));
      r.f1 = e.at("f1").get<double>();
      r.f1_ci = interval_from(e.at("f1_ci"));
      if (e.contains("auprc")) {
        r.auprc = e.at("auprc").get<double>();
        r.auprc_ci = interval_from(e.at("auprc_ci"));
      }
      rows.push_back(std::move(r));
    }
    return rows;
  } catch (const nlohmann::json::exception& ex) {
    throw FormatError(std::string("comparison: ") + ex.what());
  }
}

}  // namespace fedround
