#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace lsc {

enum class Variant { kLscGnn, kFullOnly, kTargetOnly, kRegOnly, kGcn, kLscJaccard };
enum class Task { kNodeClassification, kLinkPrediction };
// Quantity used to pick the best epoch.
enum class Selection { kAuc, kLoss };
enum class TargetLossKind { kBce, kSoftmax };

std::string_view variant_name(Variant v);
std::string_view task_name(Task t);
std::string_view selection_name(Selection s);
std::string_view target_loss_name(TargetLossKind k);
// Throw ConfigError on unknown names.
Variant parse_variant(std::string_view name);
Task parse_task(std::string_view name);
Selection parse_selection(std::string_view name);
TargetLossKind parse_target_loss(std::string_view name);

// Variants with a regularization encoder, i.e. those that sweep lambda.
bool uses_regularizer(Variant v) noexcept;

struct TrainConfig {
  std::size_t epochs = 1000;
  double lr = 0.005;
  std::size_t hidden = 32;
  std::size_t latent = 16;
  // Layers of the main encoder (hidden..., latent) and of f'.
  std::size_t layers = 2;
  std::size_t reg_layers = 1;
  std::vector<double> lambda_grid{0.0, 0.01, 0.1, 1.0, 10.0};
  std::uint64_t seed = 0;
  Variant variant = Variant::kLscGnn;
  Task task = Task::kNodeClassification;
  double jaccard_threshold = 0.01;
  Selection selection = Selection::kAuc;
  TargetLossKind target_loss = TargetLossKind::kBce;

  // Throws ConfigError for non-positive epochs/lr/dims or a bad grid.
  void validate() const;
  // hidden repeated (layers - 1) times followed by latent.
  std::vector<std::size_t> encoder_dims(std::size_t num_layers) const;
};

}  // namespace lsc
