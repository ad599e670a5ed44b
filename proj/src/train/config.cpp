#include "lsc/train/config.hpp"

#include <array>
#include <cmath>
#include <utility>

#include "lsc/core/error.hpp"

namespace lsc {
namespace {

constexpr std::array<std::pair<Variant, std::string_view>, 6> kVariants{{
    {Variant::kLscGnn, "lscgnn"},
    {Variant::kFullOnly, "full-only"},
    {Variant::kTargetOnly, "target-only"},
    {Variant::kRegOnly, "reg-only"},
    {Variant::kGcn, "gcn"},
    {Variant::kLscJaccard, "lsc-jaccard"},
}};

template <typename E, std::size_t N>
std::string_view name_of(const std::array<std::pair<E, std::string_view>, N>& table, E value) {
  for (const auto& [v, name] : table) {
    if (v == value) {
      return name;
    }
  }
  return "?";
}

template <typename E, std::size_t N>
E parse_name(const std::array<std::pair<E, std::string_view>, N>& table, std::string_view name,
             const char* what) {
  std::string known;
  for (const auto& [v, n] : table) {
    if (n == name) {
      return v;
    }
    known += known.empty() ? "" : ", ";
    known += n;
  }
  throw ConfigError("unknown " + std::string(what) + " '" + std::string(name) + "' (expected one of: " + known +
                    ")");
}

constexpr std::array<std::pair<Task, std::string_view>, 2> kTasks{{
    {Task::kNodeClassification, "node-classification"},
    {Task::kLinkPrediction, "link-prediction"},
}};
constexpr std::array<std::pair<Selection, std::string_view>, 2> kSelections{{
    {Selection::kAuc, "auc"},
    {Selection::kLoss, "loss"},
}};
constexpr std::array<std::pair<TargetLossKind, std::string_view>, 2> kLosses{{
    {TargetLossKind::kBce, "bce"},
    {TargetLossKind::kSoftmax, "softmax"},
}};

}  // namespace

std::string_view variant_name(Variant v) { return name_of(kVariants, v); }
std::string_view task_name(Task t) { return name_of(kTasks, t); }
std::string_view selection_name(Selection s) { return name_of(kSelections, s); }
std::string_view target_loss_name(TargetLossKind k) { return name_of(kLosses, k); }

Variant parse_variant(std::string_view name) { return parse_name(kVariants, name, "variant"); }
Task parse_task(std::string_view name) { return parse_name(kTasks, name, "task"); }
Selection parse_selection(std::string_view name) { return parse_name(kSelections, name, "selection"); }
TargetLossKind parse_target_loss(std::string_view name) { return parse_name(kLosses, name, "target loss"); }

bool uses_regularizer(Variant v) noexcept { return v == Variant::kLscGnn || v == Variant::kLscJaccard; }

void TrainConfig::validate() const {
  if (epochs == 0) {
    throw ConfigError("epochs must be positive");
  }
  if (!(lr > 0.0) || !std::isfinite(lr)) {
    throw ConfigError("lr must be positive");
  }
  if (hidden == 0 || latent == 0 || layers == 0 || reg_layers == 0) {
    throw ConfigError("hidden, latent, layers and reg_layers must be positive");
  }
  if (lambda_grid.empty()) {
    throw ConfigError("lambda grid must not be empty");
  }
  for (const double l : lambda_grid) {
    if (!(l >= 0.0) || !std::isfinite(l)) {
      throw ConfigError("lambda values must be finite and non-negative");
    }
  }
  if (!(jaccard_threshold >= 0.0) || jaccard_threshold > 1.0) {
    throw ConfigError("jaccard_threshold must lie in [0, 1]");
  }
}

std::vector<std::size_t> TrainConfig::encoder_dims(std::size_t num_layers) const {
  std::vector<std::size_t> dims(num_layers, hidden);
  dims.back() = latent;
  return dims;
}

}  // namespace lsc
