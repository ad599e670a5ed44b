#include "lsc/train/record.hpp"

#include <cmath>
#include <limits>
#include <map>

#include <json.hpp>

#include "lsc/core/error.hpp"

namespace lsc {
using nlohmann::ordered_json;

std::string_view record_kind_name(RecordKind k) {
  switch (k) {
    case RecordKind::kRun:
      return "run";
    case RecordKind::kSelected:
      return "selected";
    case RecordKind::kError:
      return "error";
  }
  return "?";
}

namespace {

RecordKind parse_kind(const std::string& s) {
  for (const auto k : {RecordKind::kRun, RecordKind::kSelected, RecordKind::kError}) {
    if (record_kind_name(k) == s) {
      return k;
    }
  }
  throw ParseError("unknown record kind '" + s + "'");
}

ordered_json number_or_null(double v) { return std::isfinite(v) ? ordered_json(v) : ordered_json(nullptr); }

double number_from(const ordered_json& j) {
  return j.is_null() ? std::numeric_limits<double>::quiet_NaN() : j.get<double>();
}

}  // namespace

std::string to_json_line(const ExperimentRecord& r) {
  ordered_json j;
  j["kind"] = record_kind_name(r.kind);
  j["dataset"] = r.dataset;
  j["target_ratio"] = r.target_ratio;
  j["perturb_rate"] = r.perturb_rate;
  j["variant"] = r.variant;
  j["lambda"] = r.lambda;
  j["seed"] = r.seed;
  j["best_epoch"] = r.best_epoch;
  j["val_metric"] = number_or_null(r.val_metric);
  j["test_metric"] = number_or_null(r.test_metric);
  j["test_accuracy"] = r.test_accuracy ? number_or_null(*r.test_accuracy) : ordered_json(nullptr);
  j["wall_seconds"] = r.wall_seconds;
  if (r.kind == RecordKind::kError) {
    j["error"] = r.error;
  }
  return j.dump();
}

ExperimentRecord record_from_json(std::string_view line) {
  try {
    const auto j = ordered_json::parse(line);
    ExperimentRecord r;
    r.kind = parse_kind(j.at("kind").get<std::string>());
    r.dataset = j.at("dataset").get<std::string>();
    r.target_ratio = j.at("target_ratio").get<double>();
    r.perturb_rate = j.at("perturb_rate").get<double>();
    r.variant = j.at("variant").get<std::string>();
    r.lambda = j.at("lambda").get<double>();
    r.seed = j.at("seed").get<std::uint64_t>();
    r.best_epoch = j.at("best_epoch").get<std::size_t>();
    r.val_metric = number_from(j.at("val_metric"));
    r.test_metric = number_from(j.at("test_metric"));
    if (j.contains("test_accuracy") && !j["test_accuracy"].is_null()) {
      r.test_accuracy = j["test_accuracy"].get<double>();
    }
    r.wall_seconds = j.at("wall_seconds").get<double>();
    if (j.contains("error")) {
      r.error = j["error"].get<std::string>();
    }
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed record: ") + e.what());
  }
}

std::string cell_key(const ExperimentRecord& r) {
  ordered_json j = ordered_json::array(
      {r.dataset, r.target_ratio, r.perturb_rate, r.variant, r.lambda, r.seed, record_kind_name(r.kind)});
  return j.dump();
}

double select_lambda(std::span<const ExperimentRecord> records) {
  std::map<double, std::pair<double, std::size_t>> by_lambda;
  for (const auto& r : records) {
    if (r.kind != RecordKind::kRun) {
      continue;
    }
    auto& [sum, n] = by_lambda[r.lambda];
    sum += r.val_metric;
    ++n;
  }
  if (by_lambda.empty()) {
    throw ValidationError("select_lambda needs at least one run record");
  }
  double best_lambda = 0.0;
  double best = -std::numeric_limits<double>::infinity();
  for (const auto& [lambda, acc] : by_lambda) {  // ascending lambda
    const double mean = acc.first / static_cast<double>(acc.second);
    if (mean > best) {
      best = mean;
      best_lambda = lambda;
    }
  }
  return best_lambda;
}

}  // namespace lsc
