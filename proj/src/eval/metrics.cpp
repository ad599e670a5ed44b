#include "lsc/eval/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "lsc/core/error.hpp"

namespace lsc {

double roc_auc_binary(std::span<const double> scores, std::span<const int> labels) {
  if (scores.size() != labels.size()) {
    throw DimensionError("AUC got " + std::to_string(scores.size()) + " scores and " +
                         std::to_string(labels.size()) + " labels");
  }
  const std::size_t n = scores.size();
  std::size_t pos = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (labels[i] != 0 && labels[i] != 1) {
      throw ValidationError("AUC labels must be 0 or 1, got " + std::to_string(labels[i]));
    }
    if (!std::isfinite(scores[i])) {
      throw ValidationError("AUC score " + std::to_string(i) + " is not finite");
    }
    pos += static_cast<std::size_t>(labels[i]);
  }
  const std::size_t neg = n - pos;
  if (pos == 0 || neg == 0) {
    throw UndefinedMetricError("AUC needs both positive and negative samples (got " + std::to_string(pos) +
                               " positive, " + std::to_string(neg) + " negative)");
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });

  // Sum of 1-based midranks of the positives.
  double rank_sum = 0.0;
  for (std::size_t i = 0; i < n;) {
    std::size_t j = i;
    while (j < n && scores[order[j]] == scores[order[i]]) {
      ++j;
    }
    const double midrank = 0.5 * static_cast<double>(i + 1 + j);
    for (std::size_t k = i; k < j; ++k) {
      if (labels[order[k]] == 1) {
        rank_sum += midrank;
      }
    }
    i = j;
  }
  const double p = static_cast<double>(pos);
  return (rank_sum - p * (p + 1.0) / 2.0) / (p * static_cast<double>(neg));
}

MetricReport roc_auc_macro_ovr(std::span<const double> scores, std::size_t num_classes,
                               std::span<const int> labels) {
  if (num_classes == 0 || scores.size() != labels.size() * num_classes) {
    throw DimensionError("macro AUC expects an [n x C] score matrix matching " + std::to_string(labels.size()) +
                         " labels");
  }
  const std::size_t n = labels.size();
  MetricReport report;
  report.name = "macro_ovr_auc";
  report.n_samples = n;
  std::vector<double> column(n);
  std::vector<int> binary(n);
  for (std::size_t c = 0; c < num_classes; ++c) {
    std::size_t positives = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (labels[i] < 0 || static_cast<std::size_t>(labels[i]) >= num_classes) {
        throw ValidationError("label " + std::to_string(labels[i]) + " outside [0," +
                              std::to_string(num_classes) + ")");
      }
      column[i] = scores[i * num_classes + c];
      binary[i] = labels[i] == static_cast<int>(c) ? 1 : 0;
      positives += static_cast<std::size_t>(binary[i]);
    }
    if (positives == 0 || positives == n) {
      report.skipped.push_back(static_cast<int>(c));
      continue;
    }
    report.classes.push_back(static_cast<int>(c));
    report.per_class.push_back(roc_auc_binary(column, binary));
  }
  if (report.per_class.empty()) {
    throw UndefinedMetricError("macro AUC has no class with both positives and negatives");
  }
  report.value = std::accumulate(report.per_class.begin(), report.per_class.end(), 0.0) /
                 static_cast<double>(report.per_class.size());
  return report;
}

double accuracy(std::span<const int> pred, std::span<const int> truth) {
  if (pred.size() != truth.size()) {
    throw DimensionError("accuracy got " + std::to_string(pred.size()) + " predictions and " +
                         std::to_string(truth.size()) + " labels");
  }
  if (pred.empty()) {
    throw ValidationError("accuracy over an empty selection");
  }
  std::size_t hits = 0;
  for (std::size_t i = 0; i < pred.size(); ++i) {
    hits += pred[i] == truth[i] ? 1 : 0;
  }
  return static_cast<double>(hits) / static_cast<double>(pred.size());
}

std::vector<int> argmax_rows(std::span<const double> scores, std::size_t num_classes) {
  if (num_classes == 0 || scores.size() % num_classes != 0) {
    throw DimensionError("argmax expects an [n x C] matrix");
  }
  const std::size_t n = scores.size() / num_classes;
  std::vector<int> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto row = scores.subspan(i * num_classes, num_classes);
    out[i] = static_cast<int>(std::max_element(row.begin(), row.end()) - row.begin());
  }
  return out;
}

MeanStd aggregate(std::span<const double> values) {
  if (values.empty()) {
    throw ValidationError("cannot aggregate an empty set of values");
  }
  MeanStd r;
  r.n = values.size();
  r.mean = std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(r.n);
  if (r.n > 1) {
    double ss = 0.0;
    for (const double v : values) {
      ss += (v - r.mean) * (v - r.mean);
    }
    r.std = std::sqrt(ss / static_cast<double>(r.n - 1));
  }
  return r;
}

}  // namespace lsc
