#pragma once

#include <optional>
#include <vector>

#include "lsc/nn/encoder.hpp"
#include "lsc/sim/splits.hpp"
#include "lsc/train/config.hpp"

namespace lsc {

// Output of the simulation protocol on a clean labeled graph.
struct NodeSimulation {
  std::vector<NodeId> target_nodes;
  EdgeSet target_edges;        // clean E_t
  EdgeSet noisy_target_edges;  // E_t plus injected false positives
  EdgeSet reg_edges;           // E_r
  SplitMasks splits;           // over labeled target nodes, 70/10/20
};

// decompose -> inject_noise -> split_nodes, every stage seeded from `seed`.
NodeSimulation simulate_nodes(const Graph& g, double target_ratio, double perturb_rate, std::uint64_t seed);

// Graphs seen by the encoders of one variant.
struct NodeInputs {
  Graph main;               // input of f
  std::optional<Graph> reg; // input of f' (regularized variants only)
};

// full-only, gcn: noisy E_t + E_r. target-only: noisy E_t. reg-only: E_r.
// lscgnn: full graph plus E_r for f'. lsc-jaccard: as lscgnn after
// removing low-similarity edges from the noisy E_t.
NodeInputs wire_node_variant(const Graph& g, const NodeSimulation& sim, Variant variant,
                             double jaccard_threshold);

// Main encoder f, optional regularization encoder f' and a linear head.
struct NodeModel {
  Encoder f;
  std::optional<Encoder> f_prime;
  Linear head;

  NodeModel(const TrainConfig& cfg, std::size_t in_dim, std::size_t num_classes, bool with_regularizer);
  std::vector<NamedParameter> parameters() const;
};

struct NodeTrainResult {
  std::size_t best_epoch = 0;
  double val_metric = 0.0;
  double test_metric = 0.0;
  double test_accuracy = 0.0;
  // Logits of the test rows at the restored checkpoint, row-major.
  std::vector<double> test_logits;
  std::vector<double> epoch_seconds;
};

// Trains `model` in place; on return it holds the best-validation parameters.
NodeTrainResult train_node_classifier(NodeModel& model, const NodeInputs& inputs, const Graph& g,
                                      const NodeSimulation& sim, const TrainConfig& cfg, double lambda);

// Logits of f and the head on `g` (no gradient recording).
Tensor node_logits(const NodeModel& model, const PreparedGraph& g);

}  // namespace lsc
