#pragma once

#include <span>
#include <string>
#include <vector>

namespace lsc {

struct MetricReport {
  std::string name;
  double value = 0.0;
  std::size_t n_samples = 0;
  std::vector<int> classes;        // classes that contributed, ascending
  std::vector<double> per_class;   // AUC per contributing class
  std::vector<int> skipped;        // classes without both positives and negatives
};

// Mann-Whitney AUC: (concordant pairs + ties / 2) / (P * N) via midranks.
// labels must be 0 or 1 and both must occur.
double roc_auc_binary(std::span<const double> scores, std::span<const int> labels);

// Unweighted mean of class-c-vs-rest AUCs over a row-major [n x C] score
// matrix. Classes that are absent (or the only class present) are skipped
// and listed in the report.
MetricReport roc_auc_macro_ovr(std::span<const double> scores, std::size_t num_classes,
                               std::span<const int> labels);

// Fraction of positions where pred == truth.
double accuracy(std::span<const int> pred, std::span<const int> truth);

// Row-wise argmax of a row-major [n x C] matrix; the first maximum wins.
std::vector<int> argmax_rows(std::span<const double> scores, std::size_t num_classes);

struct MeanStd {
  double mean = 0.0;
  double std = 0.0;  // sample standard deviation (n - 1); 0 for one value
  std::size_t n = 0;
};

MeanStd aggregate(std::span<const double> values);

}  // namespace lsc
