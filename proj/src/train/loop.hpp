#pragma once

#include <functional>
#include <span>
#include <vector>

#include "lsc/nn/parameter.hpp"
#include "lsc/train/config.hpp"

namespace lsc::detail {

struct LossParts {
  Tensor total;
  double target = 0.0;
  double reg = 0.0;
};

struct EpochEval {
  double metric = 0.0;  // validation AUC
  double loss = 0.0;    // validation target loss
};

struct LoopResult {
  std::size_t best_epoch = 0;  // 1-based
  double best_metric = 0.0;
  std::vector<double> epoch_seconds;
};

// Full-batch Adam over `params` for cfg.epochs epochs. After every update
// `evaluate` runs without gradient recording; the parameters of the best
// epoch (strict improvement) are restored before returning.
LoopResult optimize(std::span<const NamedParameter> params, const TrainConfig& cfg,
                    const std::function<LossParts()>& step_loss, const std::function<EpochEval()>& evaluate);

}  // namespace lsc::detail
