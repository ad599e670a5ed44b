#pragma once

#include <optional>
#include <vector>

#include "lsc/nn/hetero_encoder.hpp"
#include "lsc/sim/splits.hpp"
#include "lsc/train/config.hpp"

namespace lsc {

// Link-prediction protocol on one same-type target relation. The clean
// target edges are split 50/20/30; false positives (noisy \ clean) stay in
// the training structure and count as training positives, while
// validation/test use held-out clean edges against fixed non-edge negatives.
struct LinkSimulation {
  RelationKey target;
  std::size_t num_target_nodes = 0;
  LinkSplit split;
  EdgeSet train_edges;    // train positives plus injected false positives
  HeteroGraph full;       // every relation, target relation = train_edges
  HeteroGraph target_only;  // the target relation alone
  HeteroGraph reg;        // every relation except the target
};

LinkSimulation simulate_links(const HeteroGraph& clean, const HeteroGraph& noisy, const RelationKey& target,
                              std::uint64_t seed);

struct LinkModel {
  HeteroEncoder f;
  std::optional<HeteroEncoder> f_prime;

  std::vector<NamedParameter> parameters() const;
};

// target-only: f over the target type and relation. full-only: f over the
// full graph. lscgnn: full-graph f plus f' over the regularization graph.
LinkModel make_link_model(const LinkSimulation& sim, const TrainConfig& cfg);

struct LinkTrainResult {
  std::size_t best_epoch = 0;
  double val_metric = 0.0;
  double test_metric = 0.0;
  std::vector<double> epoch_seconds;
};

LinkTrainResult train_link_predictor(LinkModel& model, const LinkSimulation& sim, const TrainConfig& cfg,
                                     double lambda);

}  // namespace lsc
