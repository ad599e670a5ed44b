#include "lsc/train/link_task.hpp"

#include "lsc/core/error.hpp"
#include "lsc/eval/metrics.hpp"
#include "lsc/train/losses.hpp"
#include "loop.hpp"

namespace lsc {
namespace {

std::vector<RelationKey> keys_of(const HeteroGraph& g) {
  std::vector<RelationKey> keys;
  for (const auto& [key, rel] : g.relations()) {
    keys.push_back(key);
  }
  return keys;
}

std::map<std::string, std::size_t> dims_of(const HeteroGraph& g) {
  std::map<std::string, std::size_t> dims;
  for (const auto& [name, t] : g.node_types()) {
    dims.emplace(name, t.features.dim(1));
  }
  return dims;
}

double pair_auc(const Tensor& z, std::span<const Edge> pos, std::span<const Edge> neg) {
  std::vector<Edge> pairs(pos.begin(), pos.end());
  pairs.insert(pairs.end(), neg.begin(), neg.end());
  const Tensor logits = link_logits(z, pairs);
  std::vector<int> labels(pairs.size(), 0);
  std::fill(labels.begin(), labels.begin() + static_cast<std::ptrdiff_t>(pos.size()), 1);
  return roc_auc_binary(logits.values(), labels);
}

}  // namespace

LinkSimulation simulate_links(const HeteroGraph& clean, const HeteroGraph& noisy, const RelationKey& target,
                              std::uint64_t seed) {
  if (target.src != target.dst) {
    throw ConfigError("target relation " + target.str() + " must connect a node type to itself");
  }
  if (!clean.find_relation(target) || !noisy.find_relation(target)) {
    throw ConfigError("graph has no relation " + target.str());
  }
  LinkSimulation sim;
  sim.target = target;
  sim.num_target_nodes = clean.node_type(target.src).num_nodes;
  const EdgeSet clean_edges = clean.undirected_edges(target);
  const EdgeSet noisy_edges = noisy.undirected_edges(target);
  const EdgeSet injected = edge_difference(noisy_edges, clean_edges);

  sim.split = split_edges_for_linkpred(clean_edges, sim.num_target_nodes, noisy_edges, {0.5, 0.2, 0.3}, seed);
  sim.train_edges = edge_union(EdgeSet::from_edges(sim.split.train_pos), injected);
  sim.full = noisy.with_undirected_relation(target, sim.train_edges);
  sim.target_only = sim.full.filter_relations([&](const RelationKey& k) { return k == target; });
  sim.reg = sim.full.filter_relations([&](const RelationKey& k) { return !(k == target); });
  return sim;
}

std::vector<NamedParameter> LinkModel::parameters() const {
  auto out = f.parameters();
  if (f_prime) {
    const auto p = f_prime->parameters();
    out.insert(out.end(), p.begin(), p.end());
  }
  return out;
}

LinkModel make_link_model(const LinkSimulation& sim, const TrainConfig& cfg) {
  const auto dims = cfg.encoder_dims(cfg.layers);
  switch (cfg.variant) {
    case Variant::kTargetOnly: {
      const std::string& type = sim.target.src;
      const std::map<std::string, std::size_t> td{{type, sim.full.node_type(type).features.dim(1)}};
      return LinkModel{HeteroEncoder(td, {sim.target}, dims, "f", cfg.seed), std::nullopt};
    }
    case Variant::kFullOnly:
      return LinkModel{HeteroEncoder(dims_of(sim.full), keys_of(sim.full), dims, "f", cfg.seed), std::nullopt};
    case Variant::kLscGnn:
      return LinkModel{
          HeteroEncoder(dims_of(sim.full), keys_of(sim.full), dims, "f", cfg.seed),
          HeteroEncoder(dims_of(sim.reg), keys_of(sim.reg), cfg.encoder_dims(cfg.reg_layers), "f_prime", cfg.seed)};
    default:
      throw ConfigError("variant '" + std::string(variant_name(cfg.variant)) +
                        "' is not available for link prediction (use target-only, full-only or lscgnn)");
  }
}

LinkTrainResult train_link_predictor(LinkModel& model, const LinkSimulation& sim, const TrainConfig& cfg,
                                     double lambda) {
  cfg.validate();
  const std::string& type = sim.target.src;
  const PreparedHetero main_graph =
      prepare(cfg.variant == Variant::kTargetOnly ? sim.target_only : sim.full);
  std::optional<PreparedHetero> reg_graph;
  if (model.f_prime) {
    reg_graph = prepare(sim.reg);
  }
  const auto& positives = sim.train_edges.edges();
  Rng neg_rng(cfg.seed, "link/train_negatives");

  auto step = [&]() {
    detail::LossParts parts;
    const Tensor z = model.f.encode(main_graph).at(type);
    const auto negatives = sample_negatives(sim.num_target_nodes, sim.train_edges, positives.size(), neg_rng);
    const Tensor target = link_target_loss(z, positives, negatives);
    parts.target = target.item();
    if (model.f_prime) {
      const Tensor z_prime = model.f_prime->encode(*reg_graph).at(type);
      const Tensor r = reg_loss(z, z_prime);
      parts.reg = r.item();
      parts.total = total_loss(target, r, lambda);
    } else {
      parts.total = target;
    }
    return parts;
  };

  auto evaluate = [&]() {
    detail::EpochEval e;
    const Tensor z = model.f.encode(main_graph).at(type);
    e.metric = pair_auc(z, sim.split.val_pos, sim.split.val_neg);
    if (cfg.selection == Selection::kLoss) {
      e.loss = link_target_loss(z, sim.split.val_pos, sim.split.val_neg).item();
    }
    return e;
  };

  const auto params = model.parameters();
  const auto loop = detail::optimize(params, cfg, step, evaluate);

  LinkTrainResult result;
  result.best_epoch = loop.best_epoch;
  result.val_metric = loop.best_metric;
  result.epoch_seconds = loop.epoch_seconds;
  NoGradGuard no_grad;
  const Tensor z = model.f.encode(main_graph).at(type);
  result.test_metric = pair_auc(z, sim.split.test_pos, sim.split.test_neg);
  return result;
}

}  // namespace lsc
