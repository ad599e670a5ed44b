#include <gtest/gtest.h>

#include <cmath>
#include <numeric>
#include <span>

#include "dense.hpp"
#include "gradcheck.hpp"
#include "lsc/core/error.hpp"
#include "lsc/nn/encoder.hpp"
#include "lsc/nn/layers.hpp"
#include "lsc/tensor/ops.hpp"
#include "test_util.hpp"

namespace lsc {
namespace {

using testing::Mat;
using testing::max_abs_diff;
using testing::mm;
using testing::random_graph;
using testing::random_tensor;
using testing::to_mat;

MessageIndex self_loop_messages(const Graph& g) { return MessageIndex::from_adjacency(with_self_loops(g), g.num_nodes()); }

Graph two_node_graph() {
  return Graph(2, Tensor::from_values({2, 2}, {1, 0, 0, 1}),
               EdgeSet::from_pairs(std::vector<std::pair<NodeId, NodeId>>{{0, 1}}), {}, 0);
}

double leaky(double x, double slope) { return x > 0 ? x : slope * x; }

// Dense A + I as a 0/1 matrix.
Mat adjacency_with_self(const Graph& g) {
  Mat a = testing::zeros(g.num_nodes(), g.num_nodes());
  for (std::size_t i = 0; i < g.num_nodes(); ++i) {
    a[i][i] = 1.0;
    for (const auto j : g.neighbors(i)) {
      a[i][j] = 1.0;
    }
  }
  return a;
}

TEST(MessageIndexTest, WeightsMatchDegrees) {
  const Graph g = random_graph(9, 0.4, 1, 1, 3);
  const MessageIndex m = self_loop_messages(g);
  ASSERT_EQ(m.size(), 2 * g.num_edges() + g.num_nodes());
  for (std::size_t e = 0; e < m.size(); ++e) {
    const double dd = static_cast<double>(g.degree(m.dst[e]) + 1);
    const double ds = static_cast<double>(g.degree(m.src[e]) + 1);
    EXPECT_DOUBLE_EQ(m.mean_weight[e], 1.0 / dd);
    EXPECT_DOUBLE_EQ(m.sym_weight[e], 1.0 / std::sqrt(ds * dd));
    if (e > 0) {
      EXPECT_LE(m.dst[e - 1], m.dst[e]);
    }
  }
}

TEST(GatLayerTest, HandEvaluatedScore) {
  const Graph g = two_node_graph();
  const MessageIndex m = self_loop_messages(g);
  const GatLayer layer(Tensor::from_values({2, 2}, {1, 0, 0, 1}), Tensor::from_values({4}, {1, 0, 0, 1}));
  const Tensor e = layer.scores(g.features(), m);
  bool found = false;
  for (std::size_t k = 0; k < m.size(); ++k) {
    if (m.dst[k] == 0 && m.src[k] == 1) {
      EXPECT_DOUBLE_EQ(e.values()[k], 2.0);
      found = true;
    }
  }
  EXPECT_TRUE(found);
}

TEST(GatLayerTest, ZeroAttentionVectorGivesZeroScoresAndMeanAggregation) {
  const Graph g = random_graph(7, 0.4, 3, 1, 5);
  const MessageIndex m = self_loop_messages(g);
  const GatLayer layer(random_tensor({3, 4}, 1), Tensor::zeros({8}));
  const Tensor scores = layer.scores(g.features(), m);
  for (const double s : scores.values()) {
    EXPECT_EQ(s, 0.0);
  }
  const Tensor att = layer.attention(g.features(), m);
  for (std::size_t k = 0; k < m.size(); ++k) {
    EXPECT_NEAR(att.values()[k], m.mean_weight[k], 1e-15);
  }
}

TEST(GatLayerTest, ScoresMatchDenseBruteForce) {
  const Graph g = random_graph(5, 0.5, 3, 1, 7);
  const MessageIndex m = self_loop_messages(g);
  const GatLayer layer(3, 4, 11, "gat");
  const Mat wh = mm(to_mat(g.features()), to_mat(layer.W));
  const auto a = layer.a.values();
  const Tensor e = layer.scores(g.features(), m);
  for (std::size_t k = 0; k < m.size(); ++k) {
    double raw = 0.0;
    for (std::size_t f = 0; f < 4; ++f) {
      raw += a[f] * wh[m.dst[k]][f] + a[4 + f] * wh[m.src[k]][f];
    }
    EXPECT_NEAR(e.values()[k], leaky(raw, 0.2), 1e-12);
  }
}

TEST(GatLayerTest, ForwardMatchesExplicitAttentionMatrix) {
  const Graph g = random_graph(6, 0.5, 3, 1, 9);
  const MessageIndex m = self_loop_messages(g);
  const GatLayer layer(3, 2, 13, "gat");
  const Mat wh = mm(to_mat(g.features()), to_mat(layer.W));
  const auto a = layer.a.values();
  const Mat mask = adjacency_with_self(g);
  Mat alpha = testing::zeros(6, 6);
  for (std::size_t i = 0; i < 6; ++i) {
    double z = 0.0;
    for (std::size_t j = 0; j < 6; ++j) {
      if (mask[i][j] != 0.0) {
        double raw = 0.0;
        for (std::size_t f = 0; f < 2; ++f) {
          raw += a[f] * wh[i][f] + a[2 + f] * wh[j][f];
        }
        alpha[i][j] = std::exp(leaky(raw, 0.2));
        z += alpha[i][j];
      }
    }
    for (auto& x : alpha[i]) {
      x /= z;
    }
  }
  EXPECT_LT(max_abs_diff(layer.forward(g.features(), m), mm(alpha, wh)), 1e-10);
}

TEST(GatLayerTest, AttentionSumsToOnePerDestination) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const Graph g = random_graph(15, 0.25, 4, 1, seed);
    const MessageIndex m = self_loop_messages(g);
    const GatLayer layer(4, 3, seed, "gat");
    const Tensor att = layer.attention(g.features(), m);
    std::vector<double> totals(g.num_nodes(), 0.0);
    for (std::size_t k = 0; k < m.size(); ++k) {
      totals[m.dst[k]] += att.values()[k];
    }
    for (const double t : totals) {
      EXPECT_NEAR(t, 1.0, 1e-12);
    }
  }
}

TEST(GatLayerTest, SingleNodeAttendsOnlyToItself) {
  const Graph g(1, Tensor::from_values({1, 2}, {0.5, -2.0}), EdgeSet{}, {}, 0);
  const MessageIndex m = self_loop_messages(g);
  const GatLayer layer(2, 3, 1, "gat");
  EXPECT_DOUBLE_EQ(layer.attention(g.features(), m).item(), 1.0);
  EXPECT_LT(max_abs_diff(layer.forward(g.features(), m), mm(to_mat(g.features()), to_mat(layer.W))), 1e-15);
}

TEST(GatLayerTest, IdenticalRowsOnSymmetricGraphGiveIdenticalOutputs) {
  const EdgeSet cycle = EdgeSet::from_pairs(std::vector<std::pair<NodeId, NodeId>>{{0, 1}, {1, 2}, {0, 2}});
  const Graph g(3, Tensor::from_values({3, 2}, {0.3, -0.7, 0.3, -0.7, 0.3, -0.7}), cycle, {}, 0);
  const GatLayer layer(2, 4, 2, "gat");
  const Tensor out = layer.forward(g.features(), self_loop_messages(g));
  for (std::size_t j = 0; j < 4; ++j) {
    EXPECT_DOUBLE_EQ(out.at(0, j), out.at(1, j));
    EXPECT_DOUBLE_EQ(out.at(0, j), out.at(2, j));
  }
}

TEST(GcnLayerTest, MatchesDenseNormalizedAdjacency) {
  const Graph g = random_graph(8, 0.3, 3, 1, 21);
  const GcnLayer layer(3, 2, 5, "gcn");
  Mat a = adjacency_with_self(g);
  std::vector<double> deg(8, 0.0);
  for (std::size_t i = 0; i < 8; ++i) {
    for (const double x : a[i]) {
      deg[i] += x;
    }
  }
  for (std::size_t i = 0; i < 8; ++i) {
    for (std::size_t j = 0; j < 8; ++j) {
      a[i][j] /= std::sqrt(deg[i] * deg[j]);
    }
  }
  const Mat expected = mm(a, mm(to_mat(g.features()), to_mat(layer.W)));
  EXPECT_LT(max_abs_diff(layer.forward(g.features(), self_loop_messages(g)), expected), 1e-10);
}

TEST(GcnLayerTest, IsolatedNodeKeepsOwnProjection) {
  const Graph g(1, Tensor::from_values({1, 3}, {1.0, 2.0, -1.0}), EdgeSet{}, {}, 0);
  const GcnLayer layer(3, 2, 8, "gcn");
  EXPECT_LT(max_abs_diff(layer.forward(g.features(), self_loop_messages(g)),
                         mm(to_mat(g.features()), to_mat(layer.W))),
            1e-15);
}

TEST(GcnLayerTest, TwoNodeCliqueWithEqualFeatures) {
  const Graph g(2, Tensor::from_values({2, 2}, {0.4, 0.1, 0.4, 0.1}),
                EdgeSet::from_pairs(std::vector<std::pair<NodeId, NodeId>>{{0, 1}}), {}, 0);
  const GcnLayer layer(2, 3, 4, "gcn");
  const Tensor out = layer.forward(g.features(), self_loop_messages(g));
  for (std::size_t j = 0; j < 3; ++j) {
    EXPECT_DOUBLE_EQ(out.at(0, j), out.at(1, j));
  }
}

TEST(SageLayerTest, MatchesDenseMeanAggregation) {
  const Graph g = random_graph(10, 0.25, 3, 1, 31);
  const SageLayer layer(3, 4, 6, "sage");
  Mat mean = testing::zeros(10, 10);
  for (std::size_t i = 0; i < 10; ++i) {
    for (const auto j : g.neighbors(i)) {
      mean[i][j] = 1.0 / static_cast<double>(g.degree(i));
    }
  }
  const Mat h = to_mat(g.features());
  const Mat expected = testing::madd(mm(h, to_mat(layer.W_self)), mm(mean, mm(h, to_mat(layer.W_neigh))));
  const MessageIndex m = MessageIndex::from_adjacency(g.adjacency(), g.num_nodes());
  EXPECT_LT(max_abs_diff(layer.forward(g.features(), m), expected), 1e-10);
}

TEST(SageLayerTest, IsolatedNodeUsesSelfTermOnly) {
  const Graph g(1, Tensor::from_values({1, 2}, {1.5, -0.5}), EdgeSet{}, {}, 0);
  const SageLayer layer(2, 3, 9, "sage");
  const MessageIndex m = MessageIndex::from_adjacency(g.adjacency(), 1);
  EXPECT_LT(max_abs_diff(layer.forward(g.features(), m), mm(to_mat(g.features()), to_mat(layer.W_self))), 1e-15);
}

TEST(SageLayerTest, IdenticalNeighborsSumWeights) {
  const Graph g(3, Tensor::from_values({3, 2}, {1, 2, 1, 2, 1, 2}),
                EdgeSet::from_pairs(std::vector<std::pair<NodeId, NodeId>>{{0, 1}, {0, 2}}), {}, 0);
  const SageLayer layer(2, 2, 10, "sage");
  Mat w = testing::madd(to_mat(layer.W_self), to_mat(layer.W_neigh));
  const Tensor out = layer.forward(g.features(), MessageIndex::from_adjacency(g.adjacency(), 3));
  EXPECT_LT(max_abs_diff(out, mm(to_mat(g.features()), w)), 1e-14);
}

TEST(EncoderTest, ZeroLayersRejected) {
  EXPECT_THROW(Encoder(LayerKind::kGat, 4, {}, "f", 0), ConfigError);
}

TEST(EncoderTest, OutputShapesFollowLayerDims) {
  const Graph g = random_graph(12, 0.3, 5, 2, 1);
  const Encoder two(LayerKind::kGat, 5, {32, 16}, "f", 0);
  const Encoder one(LayerKind::kGat, 5, {16}, "f_prime", 0);
  EXPECT_EQ(two.encode(g).shape(), (Shape{12, 16}));
  EXPECT_EQ(one.encode(g).shape(), (Shape{12, 16}));
  EXPECT_EQ(two.num_layers(), 2u);
  EXPECT_EQ(one.num_layers(), 1u);
  EXPECT_EQ(two.parameters().size(), 4u);
  EXPECT_EQ(two.parameters()[0].path, "f/layer0/W");
  EXPECT_EQ(two.parameters()[1].path, "f/layer0/a");
}

TEST(EncoderTest, FeatureWidthMismatchRejected) {
  const Graph g = random_graph(5, 0.3, 3, 1, 1);
  const Encoder enc(LayerKind::kGcn, 4, {2}, "f", 0);
  EXPECT_THROW(enc.encode(g), DimensionError);
}

TEST(EncoderTest, InitialisationDependsOnlyOnSeedAndPath) {
  const Encoder a(LayerKind::kGat, 6, {8, 4}, "f", 17);
  const Encoder b(LayerKind::kGat, 6, {8, 4}, "f", 17);
  const Encoder c(LayerKind::kGat, 6, {8, 4}, "f_prime", 17);
  const auto pa = a.parameters();
  const auto pb = b.parameters();
  const auto pc = c.parameters();
  for (std::size_t i = 0; i < pa.size(); ++i) {
    EXPECT_EQ(testing::to_vector(pa[i].tensor), testing::to_vector(pb[i].tensor));
    EXPECT_NE(testing::to_vector(pa[i].tensor), testing::to_vector(pc[i].tensor));
  }
  // Glorot bound for the [6 x 8] weight.
  const double bound = std::sqrt(6.0 / 14.0);
  for (const double w : pa[0].tensor.values()) {
    EXPECT_LE(std::abs(w), bound);
  }
}

TEST(EncoderTest, TwoLayersComposeWithEluBetween) {
  const Graph g = random_graph(9, 0.3, 4, 1, 2);
  const Encoder enc(LayerKind::kSage, 4, {5, 3}, "f", 3);
  const MessageIndex m = MessageIndex::from_adjacency(g.adjacency(), 9);
  const auto& l0 = std::get<SageLayer>(enc.layer(0));
  const auto& l1 = std::get<SageLayer>(enc.layer(1));
  const Tensor expected = l1.forward(elu(l0.forward(g.features(), m)), m);
  EXPECT_EQ(testing::to_vector(enc.encode(g)), testing::to_vector(expected));
}


class EncoderPropertyTest : public ::testing::TestWithParam<LayerKind> {};

Graph permuted(const Graph& g, const std::vector<NodeId>& perm) {
  const std::size_t n = g.num_nodes();
  const std::size_t f = g.num_features();
  std::vector<double> feats(n * f);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < f; ++j) {
      feats[perm[i] * f + j] = g.features().at(i, j);
    }
  }
  std::vector<Edge> edges;
  for (const auto& e : g.edges()) {
    edges.push_back(Edge{perm[e.u], perm[e.v]});
  }
  return Graph(n, Tensor::from_values({n, f}, std::move(feats)), EdgeSet::from_edges(edges), {}, 0);
}

TEST_P(EncoderPropertyTest, PermutationEquivariant) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const Graph g = random_graph(8, 0.35, 3, 1, seed);
    std::vector<NodeId> perm(8);
    std::iota(perm.begin(), perm.end(), NodeId{0});
    Rng rng(seed, "test/perm");
    rng.shuffle(std::span<NodeId>(perm));
    const Encoder enc(GetParam(), 3, {4, 2}, "f", seed);
    const Tensor z = enc.encode(g);
    const Tensor zp = enc.encode(permuted(g, perm));
    for (std::size_t i = 0; i < 8; ++i) {
      for (std::size_t j = 0; j < 2; ++j) {
        EXPECT_NEAR(zp.at(perm[i], j), z.at(i, j), 1e-10);
      }
    }
  }
}

TEST_P(EncoderPropertyTest, IsolatedNodesStayFinite) {
  // Nodes 5..9 have no edges at all.
  const EdgeSet e = EdgeSet::from_pairs(std::vector<std::pair<NodeId, NodeId>>{{0, 1}, {1, 2}, {3, 4}});
  const Graph g(10, random_tensor({10, 3}, 4), e, {}, 0);
  const Encoder enc(GetParam(), 3, {6, 2}, "f", 1);
  const Tensor z = enc.encode(g);
  for (const double v : z.values()) {
    EXPECT_TRUE(std::isfinite(v));
  }
}

TEST_P(EncoderPropertyTest, GradientsMatchFiniteDifferences) {
  const Graph g = random_graph(10, 0.3, 3, 1, 12);
  const Encoder enc(GetParam(), 3, {4, 2}, "f", 12);
  const PreparedGraph prepared = prepare(g, GetParam());
  const Tensor target = random_tensor({10, 2}, 99);
  const auto result = testing::grad_check(enc.parameters(), [&] { return mse_mean(enc.encode(prepared), target); });
  EXPECT_LT(result.max_rel_error, 1e-4) << result.worst;
}

INSTANTIATE_TEST_SUITE_P(AllKinds, EncoderPropertyTest,
                         ::testing::Values(LayerKind::kGat, LayerKind::kGcn, LayerKind::kSage),
                         [](const auto& info) { return std::string(layer_kind_name(info.param)); });

TEST(LinearTest, BiasStartsAtZeroAndBroadcasts) {
  Linear lin(3, 2, true, 5, "head");
  for (const double b : lin.b.values()) {
    EXPECT_EQ(b, 0.0);
  }
  lin.b.mutable_values()[1] = 1.0;
  const Tensor x = random_tensor({4, 3}, 6);
  const Tensor y = lin.forward(x);
  Mat expected = mm(to_mat(x), to_mat(lin.W));
  for (auto& row : expected) {
    row[1] += 1.0;
  }
  EXPECT_LT(max_abs_diff(y, expected), 1e-15);
  EXPECT_EQ(lin.parameters("head")[1].path, "head/b");
}

}  // namespace
}  // namespace lsc
