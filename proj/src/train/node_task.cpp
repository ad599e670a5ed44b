#include "lsc/train/node_task.hpp"

#include <cmath>

#include "lsc/core/error.hpp"
#include "lsc/eval/metrics.hpp"
#include "lsc/sim/perturb.hpp"
#include "lsc/train/jaccard.hpp"
#include "lsc/train/losses.hpp"
#include "loop.hpp"

namespace lsc {
namespace {

LayerKind main_kind(Variant v) { return v == Variant::kGcn ? LayerKind::kGcn : LayerKind::kGat; }

// Per-class scores used for AUC: logits under BCE, probabilities under softmax.
std::vector<double> class_scores(const Tensor& selected, TargetLossKind kind) {
  std::vector<double> s(selected.values().begin(), selected.values().end());
  if (kind == TargetLossKind::kSoftmax) {
    const std::size_t c = selected.dim(1);
    for (std::size_t i = 0; i < selected.dim(0); ++i) {
      double* row = s.data() + i * c;
      double mx = row[0];
      for (std::size_t j = 1; j < c; ++j) {
        mx = std::max(mx, row[j]);
      }
      double z = 0.0;
      for (std::size_t j = 0; j < c; ++j) {
        row[j] = std::exp(row[j] - mx);
        z += row[j];
      }
      for (std::size_t j = 0; j < c; ++j) {
        row[j] /= z;
      }
    }
  }
  return s;
}

std::vector<int> labels_of(const Graph& g, std::span<const NodeId> rows) {
  std::vector<int> y(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    y[i] = g.labels()[rows[i]];
  }
  return y;
}

}  // namespace

NodeSimulation simulate_nodes(const Graph& g, double target_ratio, double perturb_rate, std::uint64_t seed) {
  if (!g.has_labels()) {
    throw ValidationError("node classification needs a labeled graph");
  }
  Decomposition d = decompose(g, DecompositionSpec{target_ratio, seed});
  NodeSimulation sim;
  sim.noisy_target_edges = inject_noise(d.target_nodes, d.target_edges, PerturbationSpec{perturb_rate, seed});
  std::vector<NodeId> labeled;
  for (const auto v : d.target_nodes) {
    if (g.labels()[v] >= 0) {
      labeled.push_back(v);
    }
  }
  sim.splits = split_nodes(labeled, {0.7, 0.1, 0.2}, seed);
  sim.target_nodes = std::move(d.target_nodes);
  sim.target_edges = std::move(d.target_edges);
  sim.reg_edges = std::move(d.reg_edges);
  return sim;
}

NodeInputs wire_node_variant(const Graph& g, const NodeSimulation& sim, Variant variant, double jaccard_threshold) {
  switch (variant) {
    case Variant::kFullOnly:
    case Variant::kGcn:
      return {with_edges(g, edge_union(sim.noisy_target_edges, sim.reg_edges)), std::nullopt};
    case Variant::kTargetOnly:
      return {with_edges(g, sim.noisy_target_edges), std::nullopt};
    case Variant::kRegOnly:
      return {with_edges(g, sim.reg_edges), std::nullopt};
    case Variant::kLscGnn:
      return {with_edges(g, edge_union(sim.noisy_target_edges, sim.reg_edges)), with_edges(g, sim.reg_edges)};
    case Variant::kLscJaccard: {
      const EdgeSet kept = jaccard_filter_edges(g.features(), sim.noisy_target_edges, jaccard_threshold);
      return {with_edges(g, edge_union(kept, sim.reg_edges)), with_edges(g, sim.reg_edges)};
    }
  }
  throw ConfigError("unsupported variant");
}

NodeModel::NodeModel(const TrainConfig& cfg, std::size_t in_dim, std::size_t num_classes, bool with_regularizer)
    : f(main_kind(cfg.variant), in_dim, cfg.encoder_dims(cfg.layers), "f", cfg.seed),
      head(cfg.latent, num_classes, true, cfg.seed, "head") {
  if (with_regularizer) {
    f_prime.emplace(main_kind(cfg.variant), in_dim, cfg.encoder_dims(cfg.reg_layers), "f_prime", cfg.seed);
  }
}

std::vector<NamedParameter> NodeModel::parameters() const {
  auto out = f.parameters();
  if (f_prime) {
    const auto p = f_prime->parameters();
    out.insert(out.end(), p.begin(), p.end());
  }
  const auto h = head.parameters("head");
  out.insert(out.end(), h.begin(), h.end());
  return out;
}

Tensor node_logits(const NodeModel& model, const PreparedGraph& g) {
  NoGradGuard no_grad;
  return model.head.forward(model.f.encode(g));
}

NodeTrainResult train_node_classifier(NodeModel& model, const NodeInputs& inputs, const Graph& g,
                                      const NodeSimulation& sim, const TrainConfig& cfg, double lambda) {
  cfg.validate();
  if (model.f_prime.has_value() != inputs.reg.has_value()) {
    throw ConfigError("regularization encoder and regularization graph must be supplied together");
  }
  const std::size_t c = g.num_classes();
  const PreparedGraph main_graph = prepare(inputs.main, model.f.kind());
  std::optional<PreparedGraph> reg;
  if (inputs.reg) {
    reg = prepare(*inputs.reg, model.f_prime->kind());
  }
  const auto target_idx = as_index(sim.target_nodes);
  const auto val_idx = as_index(sim.splits.val);
  const auto val_labels = labels_of(g, sim.splits.val);

  auto step = [&]() {
    detail::LossParts parts;
    const Tensor z = model.f.encode(main_graph);
    const Tensor target = node_target_loss(model.head.forward(z), g.labels(), sim.splits.train, c, cfg.target_loss);
    parts.target = target.item();
    if (model.f_prime) {
      const Tensor z_prime = model.f_prime->encode(*reg);
      const Tensor r = reg_loss(gather_rows(z, target_idx), gather_rows(z_prime, target_idx));
      parts.reg = r.item();
      parts.total = total_loss(target, r, lambda);
    } else {
      parts.total = target;
    }
    return parts;
  };

  auto evaluate = [&]() {
    detail::EpochEval e;
    const Tensor logits = model.head.forward(model.f.encode(main_graph));
    const Tensor selected = gather_rows(logits, val_idx);
    e.metric = roc_auc_macro_ovr(class_scores(selected, cfg.target_loss), c, val_labels).value;
    if (cfg.selection == Selection::kLoss) {
      e.loss = node_target_loss(logits, g.labels(), sim.splits.val, c, cfg.target_loss).item();
    }
    return e;
  };

  const auto params = model.parameters();
  const auto loop = detail::optimize(params, cfg, step, evaluate);

  NodeTrainResult result;
  result.best_epoch = loop.best_epoch;
  result.val_metric = loop.best_metric;
  result.epoch_seconds = loop.epoch_seconds;
  const Tensor test_sel = gather_rows(node_logits(model, main_graph), as_index(sim.splits.test));
  const auto test_labels = labels_of(g, sim.splits.test);
  result.test_logits.assign(test_sel.values().begin(), test_sel.values().end());
  result.test_metric = roc_auc_macro_ovr(class_scores(test_sel, cfg.target_loss), c, test_labels).value;
  result.test_accuracy = accuracy(argmax_rows(result.test_logits, c), test_labels);
  return result;
}

}  // namespace lsc
