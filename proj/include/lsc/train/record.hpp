#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>

namespace lsc {

enum class RecordKind { kRun, kSelected, kError };

std::string_view record_kind_name(RecordKind k);

// One JSONL line of experiment output. Key order in the serialized form is
// fixed, so identical records serialize to identical bytes.
struct ExperimentRecord {
  RecordKind kind = RecordKind::kRun;
  std::string dataset;
  double target_ratio = 0.0;
  double perturb_rate = 0.0;
  std::string variant;
  double lambda = 0.0;
  std::uint64_t seed = 0;
  std::size_t best_epoch = 0;
  double val_metric = 0.0;
  double test_metric = 0.0;
  double wall_seconds = 0.0;
  std::optional<double> test_accuracy;  // node classification only
  std::string error;                    // kError only

  friend bool operator==(const ExperimentRecord&, const ExperimentRecord&) = default;
};

std::string to_json_line(const ExperimentRecord& r);
// Throws ParseError on malformed input.
ExperimentRecord record_from_json(std::string_view line);

// Identity of a sweep cell: dataset, ratio, rate, variant, lambda, seed and kind.
std::string cell_key(const ExperimentRecord& r);

// Lambda whose run records have the highest mean validation metric; ties
// resolve to the smaller lambda. Ignores non-run records. Throws
// ValidationError when no run record is given.
double select_lambda(std::span<const ExperimentRecord> records);

}  // namespace lsc
