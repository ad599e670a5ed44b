#include "loop.hpp"

#include <chrono>
#include <cmath>
#include <limits>
#include <sstream>

#include "lsc/core/error.hpp"
#include "lsc/tensor/adam.hpp"

namespace lsc::detail {

LoopResult optimize(std::span<const NamedParameter> params, const TrainConfig& cfg,
                    const std::function<LossParts()>& step_loss, const std::function<EpochEval()>& evaluate) {
  AdamOptions opts;
  opts.lr = cfg.lr;
  Adam adam(tensors_of(params), opts);

  LoopResult result;
  result.epoch_seconds.reserve(cfg.epochs);
  double best_score = -std::numeric_limits<double>::infinity();
  std::vector<std::vector<double>> best_values;

  for (std::size_t epoch = 1; epoch <= cfg.epochs; ++epoch) {
    const auto start = std::chrono::steady_clock::now();
    const LossParts parts = step_loss();
    const double total = parts.total.item();
    if (!std::isfinite(total)) {
      std::ostringstream msg;
      msg << "non-finite loss at epoch " << epoch << ": total=" << total << " target=" << parts.target
          << " reg=" << parts.reg;
      throw TrainingError(msg.str());
    }
    backward(parts.total);
    // Parameters the loss does not reach (e.g. last-layer weights of a node
    // type whose latents are unused) get an explicit zero gradient.
    for (const auto& p : params) {
      if (!p.tensor.has_grad()) {
        p.tensor.node().grad_buffer();
      }
    }
    adam.step();
    result.epoch_seconds.push_back(
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());

    EpochEval eval;
    {
      NoGradGuard no_grad;
      eval = evaluate();
    }
    const double score = cfg.selection == Selection::kAuc ? eval.metric : -eval.loss;
    if (score > best_score) {
      best_score = score;
      result.best_epoch = epoch;
      result.best_metric = eval.metric;
      best_values = snapshot(params);
    }
  }
  if (best_values.empty()) {
    throw TrainingError("validation never produced a comparable score");
  }
  restore(params, best_values);
  return result;
}

}  // namespace lsc::detail
