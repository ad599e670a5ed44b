#include <gtest/gtest.h>

#include <cmath>
#include <cstring>
#include <limits>

#include "gradcheck.hpp"
#include "lsc/core/error.hpp"
#include "lsc/sim/synth_hetero.hpp"
#include "lsc/tensor/adam.hpp"
#include "lsc/tensor/ops.hpp"
#include "lsc/train/link_task.hpp"
#include "lsc/train/losses.hpp"
#include "lsc/train/node_task.hpp"
#include "planted.hpp"
#include "test_util.hpp"

namespace lsc {
namespace {

using testing::planted_graph;

TrainConfig small_config(Variant v, std::size_t epochs, std::uint64_t seed = 1) {
  TrainConfig cfg;
  cfg.epochs = epochs;
  cfg.hidden = 8;
  cfg.latent = 4;
  cfg.seed = seed;
  cfg.variant = v;
  return cfg;
}

struct NodeRun {
  NodeTrainResult result;
  std::vector<std::vector<double>> params;
};

NodeRun run_node(const Graph& g, const NodeSimulation& sim, const TrainConfig& cfg, double lambda) {
  NodeModel model(cfg, g.num_features(), g.num_classes(), uses_regularizer(cfg.variant));
  const NodeInputs inputs = wire_node_variant(g, sim, cfg.variant, cfg.jaccard_threshold);
  NodeRun run;
  run.result = train_node_classifier(model, inputs, g, sim, cfg, lambda);
  run.params = snapshot(model.parameters());
  return run;
}

bool same_bits(const std::vector<double>& a, const std::vector<double>& b) {
  return a.size() == b.size() && std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0;
}

TEST(SimulateNodesTest, SplitsCoverLabeledTargetNodes) {
  const Graph g = planted_graph(60, 3, 6, 1);
  const NodeSimulation sim = simulate_nodes(g, 0.7, 0.2, 5);
  EXPECT_EQ(sim.target_nodes.size(), 42u);
  EXPECT_EQ(sim.splits.train.size() + sim.splits.val.size() + sim.splits.test.size(), 42u);
  EXPECT_EQ(edge_difference(sim.noisy_target_edges, sim.target_edges).size(),
            static_cast<std::size_t>(std::floor(0.2 * sim.target_edges.size() + 1e-9)));
  const NodeSimulation again = simulate_nodes(g, 0.7, 0.2, 5);
  EXPECT_EQ(again.splits.test, sim.splits.test);
  EXPECT_EQ(again.noisy_target_edges, sim.noisy_target_edges);
}

TEST(SimulateNodesTest, UnlabeledNodesNeverEnterSplits) {
  const Graph base = planted_graph(40, 2, 4, 2);
  std::vector<int> labels = base.labels();
  for (std::size_t i = 0; i < 40; i += 5) {
    labels[i] = -1;
  }
  const Graph g(40, base.features(), base.edges(), labels, 2);
  const NodeSimulation sim = simulate_nodes(g, 1.0, 0.0, 3);
  EXPECT_EQ(sim.splits.train.size() + sim.splits.val.size() + sim.splits.test.size(), 32u);
  for (const auto v : sim.splits.train) {
    EXPECT_NE(v % 5, 0u);
  }
}

TEST(WiringTest, VariantsReadTheRightEdges) {
  const Graph g = planted_graph(50, 2, 4, 3);
  const NodeSimulation sim = simulate_nodes(g, 0.6, 0.3, 1);
  const EdgeSet full = edge_union(sim.noisy_target_edges, sim.reg_edges);

  const NodeInputs target_only = wire_node_variant(g, sim, Variant::kTargetOnly, 0.01);
  EXPECT_EQ(target_only.main.edges(), sim.noisy_target_edges);
  EXPECT_TRUE(edge_intersection(target_only.main.edges(), sim.reg_edges).empty());
  EXPECT_FALSE(target_only.reg);

  const NodeInputs reg_only = wire_node_variant(g, sim, Variant::kRegOnly, 0.01);
  EXPECT_EQ(reg_only.main.edges(), sim.reg_edges);
  EXPECT_TRUE(edge_intersection(reg_only.main.edges(), sim.noisy_target_edges).empty());

  const NodeInputs lsc = wire_node_variant(g, sim, Variant::kLscGnn, 0.01);
  EXPECT_EQ(lsc.main.edges(), full);
  ASSERT_TRUE(lsc.reg);
  EXPECT_EQ(lsc.reg->edges(), sim.reg_edges);

  EXPECT_EQ(wire_node_variant(g, sim, Variant::kFullOnly, 0.01).main.edges(), full);
  EXPECT_EQ(wire_node_variant(g, sim, Variant::kGcn, 0.01).main.edges(), full);

  // Real-valued features: the support is the positive entries.
  const NodeInputs jac = wire_node_variant(g, sim, Variant::kLscJaccard, 0.5);
  EXPECT_TRUE(edge_difference(jac.main.edges(), full).empty());
  EXPECT_LT(jac.main.num_edges(), full.size());
  EXPECT_EQ(jac.reg->edges(), sim.reg_edges);
}

TEST(WiringTest, DualModelHasTwoEncodersAndOneHead) {
  TrainConfig cfg = small_config(Variant::kLscGnn, 1);
  cfg.reg_layers = cfg.layers;
  const NodeModel dual(cfg, 6, 3, true);
  const NodeModel single(cfg, 6, 3, false);
  const std::size_t head = 4 * 3 + 3;
  EXPECT_EQ(count_scalars(dual.parameters()), 2 * (count_scalars(single.parameters()) - head) + head);
  EXPECT_EQ(dual.parameters().front().path, "f/layer0/W");
}

TEST(NodeTrainerTest, ZeroLambdaMatchesFullOnlyBitwise) {
  const Graph g = planted_graph(60, 3, 6, 4);
  const NodeSimulation sim = simulate_nodes(g, 0.7, 0.2, 7);
  const NodeRun lsc = run_node(g, sim, small_config(Variant::kLscGnn, 25, 7), 0.0);
  const NodeRun full = run_node(g, sim, small_config(Variant::kFullOnly, 25, 7), 0.0);
  EXPECT_EQ(lsc.result.best_epoch, full.result.best_epoch);
  EXPECT_TRUE(same_bits(lsc.result.test_logits, full.result.test_logits));
  EXPECT_EQ(lsc.result.test_metric, full.result.test_metric);
  // f parameters come first in both models.
  for (std::size_t i = 0; i < 4; ++i) {
    EXPECT_TRUE(same_bits(lsc.params[i], full.params[i]));
  }
}

TEST(NodeTrainerTest, OneEpochCheckpointIsTheFirstUpdate) {
  const Graph g = planted_graph(40, 2, 4, 5);
  const NodeSimulation sim = simulate_nodes(g, 0.8, 0.1, 2);
  const TrainConfig cfg = small_config(Variant::kLscGnn, 1, 3);
  const double lambda = 0.5;
  const NodeRun run = run_node(g, sim, cfg, lambda);
  EXPECT_EQ(run.result.best_epoch, 1u);

  // Independent single step.
  NodeModel model(cfg, g.num_features(), g.num_classes(), true);
  const NodeInputs in = wire_node_variant(g, sim, cfg.variant, cfg.jaccard_threshold);
  const auto idx = as_index(sim.target_nodes);
  const Tensor z = model.f.encode(in.main);
  const Tensor zp = model.f_prime->encode(*in.reg);
  const Tensor loss =
      add(node_target_loss(model.head.forward(z), g.labels(), sim.splits.train, g.num_classes()),
          scale(reg_loss(gather_rows(z, idx), gather_rows(zp, idx)), lambda));
  backward(loss);
  Adam adam(tensors_of(model.parameters()), AdamOptions{cfg.lr});
  adam.step();
  const auto expected = snapshot(model.parameters());
  ASSERT_EQ(expected.size(), run.params.size());
  for (std::size_t i = 0; i < expected.size(); ++i) {
    EXPECT_TRUE(same_bits(expected[i], run.params[i])) << model.parameters()[i].path;
  }
}

TEST(NodeTrainerTest, DeterministicForSameSeed) {
  const Graph g = planted_graph(50, 3, 6, 6);
  const NodeSimulation sim = simulate_nodes(g, 0.7, 0.1, 9);
  const TrainConfig cfg = small_config(Variant::kLscGnn, 15, 9);
  const NodeRun a = run_node(g, sim, cfg, 0.1);
  const NodeRun b = run_node(g, sim, cfg, 0.1);
  EXPECT_EQ(a.result.best_epoch, b.result.best_epoch);
  EXPECT_EQ(a.result.val_metric, b.result.val_metric);
  EXPECT_TRUE(same_bits(a.result.test_logits, b.result.test_logits));
}

TEST(NodeTrainerTest, LearnsPlantedLabels) {
  const Graph g = planted_graph(120, 3, 9, 7);
  const NodeSimulation sim = simulate_nodes(g, 0.8, 0.0, 4);
  for (const Variant v : {Variant::kFullOnly, Variant::kGcn, Variant::kLscGnn}) {
    const NodeRun run = run_node(g, sim, small_config(v, 60, 4), 0.1);
    EXPECT_GT(run.result.test_metric, 0.8) << variant_name(v);
    EXPECT_EQ(run.result.epoch_seconds.size(), 60u);
  }
}

TEST(NodeTrainerTest, LargerLambdaPullsLatentsTogether) {
  const Graph g = planted_graph(60, 3, 6, 8);
  const NodeSimulation sim = simulate_nodes(g, 0.7, 0.2, 5);
  TrainConfig cfg = small_config(Variant::kLscGnn, 200, 5);
  cfg.selection = Selection::kLoss;
  auto reg_after = [&](double lambda) {
    NodeModel model(cfg, g.num_features(), g.num_classes(), true);
    const NodeInputs in = wire_node_variant(g, sim, cfg.variant, cfg.jaccard_threshold);
    train_node_classifier(model, in, g, sim, cfg, lambda);
    const auto idx = as_index(sim.target_nodes);
    NoGradGuard no_grad;
    return reg_loss(gather_rows(model.f.encode(in.main), idx), gather_rows(model.f_prime->encode(*in.reg), idx))
        .item();
  };
  EXPECT_LE(reg_after(10.0), reg_after(0.0));
}

TEST(NodeTrainerTest, TotalLossGradientsReachBothEncoders) {
  const Graph g = planted_graph(10, 2, 3, 9, 0.4, 0.1);
  const NodeSimulation sim = simulate_nodes(g, 1.0, 0.0, 1);
  TrainConfig cfg = small_config(Variant::kLscGnn, 1, 2);
  cfg.hidden = 3;
  cfg.latent = 2;
  const Graph reg_graph = with_edges(g, testing::random_edges(10, 0.3, 4));
  const NodeModel model(cfg, 3, 2, true);
  const PreparedGraph main_graph = prepare(g, LayerKind::kGat);
  const PreparedGraph reg = prepare(reg_graph, LayerKind::kGat);
  const auto idx = as_index(sim.target_nodes);
  const auto result = testing::grad_check(model.parameters(), [&] {
    const Tensor z = model.f.encode(main_graph);
    const Tensor zp = model.f_prime->encode(reg);
    return total_loss(node_target_loss(model.head.forward(z), g.labels(), sim.splits.train, 2),
                      reg_loss(gather_rows(z, idx), gather_rows(zp, idx)), 1.0);
  });
  EXPECT_LT(result.max_rel_error, 1e-4) << result.worst;
}

TEST(NodeTrainerTest, NonFiniteLossAbortsWithDiagnostic) {
  const Graph base = planted_graph(30, 2, 3, 10);
  std::vector<double> f(base.features().values().begin(), base.features().values().end());
  f[0] = std::numeric_limits<double>::quiet_NaN();
  const Graph g(30, Tensor::from_values({30, 3}, f), base.edges(), base.labels(), 2);
  const NodeSimulation sim = simulate_nodes(g, 1.0, 0.0, 1);
  try {
    run_node(g, sim, small_config(Variant::kFullOnly, 3), 0.0);
    FAIL() << "expected TrainingError";
  } catch (const TrainingError& e) {
    EXPECT_NE(std::string(e.what()).find("epoch 1"), std::string::npos) << e.what();
  }
}

TEST(NodeTrainerTest, MismatchedRegularizerRejected) {
  const Graph g = planted_graph(30, 2, 3, 11);
  const NodeSimulation sim = simulate_nodes(g, 0.8, 0.0, 1);
  const TrainConfig cfg = small_config(Variant::kFullOnly, 1);
  NodeModel model(cfg, 3, 2, true);
  EXPECT_THROW(train_node_classifier(model, wire_node_variant(g, sim, cfg.variant, 0.01), g, sim, cfg, 0.0),
               ConfigError);
}

TEST(ConfigTest, NamesRoundTripAndValidation) {
  for (const Variant v : {Variant::kLscGnn, Variant::kFullOnly, Variant::kTargetOnly, Variant::kRegOnly,
                          Variant::kGcn, Variant::kLscJaccard}) {
    EXPECT_EQ(parse_variant(variant_name(v)), v);
  }
  EXPECT_THROW(parse_variant("gin"), ConfigError);
  EXPECT_EQ(parse_task("link-prediction"), Task::kLinkPrediction);
  TrainConfig cfg;
  EXPECT_NO_THROW(cfg.validate());
  EXPECT_EQ(cfg.encoder_dims(2), (std::vector<std::size_t>{32, 16}));
  EXPECT_EQ(cfg.encoder_dims(1), (std::vector<std::size_t>{16}));
  cfg.lr = 0.0;
  EXPECT_THROW(cfg.validate(), ConfigError);
  cfg = TrainConfig{};
  cfg.epochs = 0;
  EXPECT_THROW(cfg.validate(), ConfigError);
  cfg = TrainConfig{};
  cfg.lambda_grid = {-1.0};
  EXPECT_THROW(cfg.validate(), ConfigError);
}

TEST(LinkTaskTest, SimulationKeepsHeldOutEdgesClean) {
  const SynthHetero s = synth_hetero(60, 50, 3, 0.2);
  const LinkSimulation sim = simulate_links(s.clean, s.noisy, kBBRelation, 3);
  const EdgeSet clean = s.clean.undirected_edges(kBBRelation);
  const EdgeSet injected = edge_difference(s.noisy.undirected_edges(kBBRelation), clean);
  EXPECT_EQ(edge_intersection(sim.train_edges, injected), injected);
  for (const auto& e : sim.split.test_pos) {
    EXPECT_TRUE(clean.contains(e.u, e.v));
    EXPECT_FALSE(sim.train_edges.contains(e.u, e.v));
  }
  EXPECT_EQ(sim.target_only.relations().size(), 1u);
  EXPECT_EQ(sim.reg.find_relation(kBBRelation), nullptr);
  EXPECT_EQ(sim.full.undirected_edges(kBBRelation), sim.train_edges);
  EXPECT_THROW(simulate_links(s.clean, s.noisy, kABRelation, 3), ConfigError);
}

TEST(LinkTaskTest, UnsupportedVariantsRejected) {
  const SynthHetero s = synth_hetero(30, 30, 1, 0.0);
  const LinkSimulation sim = simulate_links(s.clean, s.noisy, kBBRelation, 1);
  EXPECT_THROW(make_link_model(sim, small_config(Variant::kGcn, 1)), ConfigError);
  EXPECT_THROW(make_link_model(sim, small_config(Variant::kRegOnly, 1)), ConfigError);
}

TEST(LinkTaskTest, TrainsAndMatchesFullOnlyAtZeroLambda) {
  const SynthHetero s = synth_hetero(80, 60, 2, 0.1);
  const LinkSimulation sim = simulate_links(s.clean, s.noisy, kBBRelation, 2);
  TrainConfig lsc_cfg = small_config(Variant::kLscGnn, 20, 2);
  TrainConfig full_cfg = small_config(Variant::kFullOnly, 20, 2);
  LinkModel lsc = make_link_model(sim, lsc_cfg);
  LinkModel full = make_link_model(sim, full_cfg);
  const LinkTrainResult a = train_link_predictor(lsc, sim, lsc_cfg, 0.0);
  const LinkTrainResult b = train_link_predictor(full, sim, full_cfg, 0.0);
  EXPECT_EQ(a.best_epoch, b.best_epoch);
  EXPECT_EQ(a.test_metric, b.test_metric);
  EXPECT_GT(a.test_metric, 0.5);
  EXPECT_LE(a.test_metric, 1.0);

  TrainConfig t_cfg = small_config(Variant::kTargetOnly, 5, 2);
  LinkModel t = make_link_model(sim, t_cfg);
  EXPECT_EQ(train_link_predictor(t, sim, t_cfg, 0.0).epoch_seconds.size(), 5u);
}

}  // namespace
}  // namespace lsc
