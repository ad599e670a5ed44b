#include <gtest/gtest.h>

#include <cmath>
#include <map>
#include <numeric>
#include <set>

#include "lsc/core/error.hpp"
#include "lsc/sim/counts.hpp"
#include "lsc/sim/perturb.hpp"
#include "lsc/sim/splits.hpp"
#include "lsc/sim/synth_hetero.hpp"
#include "test_util.hpp"

namespace lsc {
namespace {

using testing::random_graph;

std::vector<NodeId> iota_nodes(std::size_t n) {
  std::vector<NodeId> v(n);
  std::iota(v.begin(), v.end(), NodeId{0});
  return v;
}

TEST(DecomposeTest, FullRatioPutsEveryEdgeInTarget) {
  const Graph g = random_graph(20, 0.3, 2, 2, 1);
  const Decomposition d = decompose(g, {1.0, 7});
  EXPECT_EQ(d.target_nodes.size(), 20u);
  EXPECT_EQ(d.target_edges, g.edges());
  EXPECT_TRUE(d.reg_edges.empty());
  EXPECT_EQ(d.reg_graph.num_edges(), 0u);
}

TEST(DecomposeTest, PathGraphHandCase) {
  const EdgeSet e = EdgeSet::from_pairs(std::vector<std::pair<NodeId, NodeId>>{{0, 1}, {1, 2}});
  const Graph g(3, Tensor::zeros({3, 1}), e, {}, 0);
  // Search for a seed whose 2-node sample is {0, 1}.
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const Decomposition d = decompose(g, {2.0 / 3.0, seed});
    if (d.target_nodes == std::vector<NodeId>{0, 1}) {
      EXPECT_EQ(d.target_edges.size(), 1u);
      EXPECT_TRUE(d.target_edges.contains(0, 1));
      EXPECT_EQ(d.reg_edges.size(), 1u);
      EXPECT_TRUE(d.reg_edges.contains(1, 2));
      return;
    }
  }
  FAIL() << "no seed produced target set {0, 1}";
}

TEST(DecomposeTest, PartitionsEdgesForManySeeds) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const Graph g = random_graph(30, 0.15, 1, 1, seed);
    const double ratio = 0.3 + 0.6 * static_cast<double>(seed % 7) / 6.0;
    const Decomposition d = decompose(g, {ratio, seed});
    EXPECT_EQ(d.target_nodes.size(), static_cast<std::size_t>(std::llround(ratio * 30)));
    EXPECT_TRUE(edge_intersection(d.target_edges, d.reg_edges).empty());
    EXPECT_EQ(edge_union(d.target_edges, d.reg_edges), g.edges());
    EXPECT_EQ(d.reg_graph.num_nodes(), 30u);
    EXPECT_EQ(d.reg_graph.edges(), d.reg_edges);
  }
}

TEST(DecomposeTest, ZeroNodeRatioRejected) {
  const Graph g = random_graph(10, 0.3, 1, 1, 2);
  EXPECT_THROW(decompose(g, {0.01, 0}), ValidationError);
  EXPECT_THROW(decompose(g, {0.0, 0}), ValidationError);
  EXPECT_THROW(decompose(g, {1.5, 0}), ValidationError);
}

TEST(DecomposeTest, DeterministicPerSeed) {
  const Graph g = random_graph(50, 0.1, 1, 1, 3);
  const Decomposition a = decompose(g, {0.7, 11});
  const Decomposition b = decompose(g, {0.7, 11});
  EXPECT_EQ(a.target_nodes, b.target_nodes);
  EXPECT_EQ(a.target_edges, b.target_edges);
  EXPECT_NE(a.target_nodes, decompose(g, {0.7, 12}).target_nodes);
}

TEST(InjectNoiseTest, ZeroRateIsIdentity) {
  const EdgeSet et = testing::random_edges(10, 0.3, 4);
  EXPECT_EQ(inject_noise(iota_nodes(10), et, {0.0, 1}), et);
}

TEST(InjectNoiseTest, ExactCountOfNewEdges) {
  std::vector<Edge> ten;
  for (NodeId i = 0; i < 10; ++i) {
    ten.push_back(Edge{i, static_cast<NodeId>(i + 10)});
  }
  const EdgeSet et = EdgeSet::from_edges(ten);
  const EdgeSet noisy = inject_noise(iota_nodes(20), et, {0.3, 5});
  EXPECT_EQ(noisy.size(), 13u);
  EXPECT_EQ(edge_difference(noisy, et).size(), 3u);
  EXPECT_EQ(edge_intersection(noisy, et), et);
}

TEST(InjectNoiseTest, CompleteTargetHasNoRoom) {
  std::vector<Edge> k5;
  for (NodeId i = 0; i < 5; ++i) {
    for (NodeId j = i + 1; j < 5; ++j) {
      k5.push_back(Edge{i, j});
    }
  }
  EXPECT_THROW(inject_noise(iota_nodes(5), EdgeSet::from_edges(k5), {0.1, 0}), ValidationError);
}

TEST(InjectNoiseTest, InjectedEdgesStayInsideTargetAndOutsideGraph) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const Graph g = random_graph(40, 0.1, 1, 1, seed);
    const double ratio = 0.5 + 0.4 * static_cast<double>(seed % 3) / 2.0;
    const double rate = 0.05 * static_cast<double>(seed % 7);
    const Decomposition d = decompose(g, {ratio, seed});
    const EdgeSet noisy = inject_noise(d.target_nodes, d.target_edges, {rate, seed});
    const EdgeSet injected = edge_difference(noisy, d.target_edges);
    EXPECT_EQ(injected.size(), floor_count(rate, d.target_edges.size()));
    EXPECT_TRUE(edge_intersection(injected, g.edges()).empty());
    const std::set<NodeId> members(d.target_nodes.begin(), d.target_nodes.end());
    for (const auto& e : injected) {
      EXPECT_TRUE(members.count(e.u) && members.count(e.v));
    }
  }
}

TEST(InjectNoiseTest, DenseAndSparseSamplingPathsAreDeterministic) {
  const EdgeSet et = testing::random_edges(12, 0.5, 6);
  const auto nodes = iota_nodes(12);
  EXPECT_EQ(inject_noise(nodes, et, {0.9, 3}), inject_noise(nodes, et, {0.9, 3}));
  EXPECT_EQ(inject_noise(nodes, et, {0.1, 3}), inject_noise(nodes, et, {0.1, 3}));
}

TEST(FloorCountTest, ToleratesDecimalRepresentation) {
  EXPECT_EQ(floor_count(0.29, 100), 29u);
  EXPECT_EQ(floor_count(0.3, 10), 3u);
  EXPECT_EQ(floor_count(0.7, 10), 7u);
  EXPECT_EQ(floor_count(0.15, 7), 1u);
}

TEST(SplitNodesTest, TenNodesSplitSevenOneTwo) {
  const SplitMasks s = split_nodes(iota_nodes(10), {0.7, 0.1, 0.2}, 1);
  EXPECT_EQ(s.train.size(), 7u);
  EXPECT_EQ(s.val.size(), 1u);
  EXPECT_EQ(s.test.size(), 2u);
}

TEST(SplitNodesTest, DisjointCoverAndDeterministic) {
  const auto nodes = iota_nodes(1000);
  const SplitMasks a = split_nodes(nodes, {0.7, 0.1, 0.2}, 42);
  const SplitMasks b = split_nodes(nodes, {0.7, 0.1, 0.2}, 42);
  EXPECT_EQ(a.train, b.train);
  EXPECT_EQ(a.val, b.val);
  EXPECT_EQ(a.test, b.test);
  EXPECT_NEAR(static_cast<double>(a.train.size()), 700.0, 1.0);
  EXPECT_NEAR(static_cast<double>(a.val.size()), 100.0, 1.0);
  EXPECT_NEAR(static_cast<double>(a.test.size()), 200.0, 1.0);
  std::set<NodeId> all(a.train.begin(), a.train.end());
  all.insert(a.val.begin(), a.val.end());
  all.insert(a.test.begin(), a.test.end());
  EXPECT_EQ(all.size(), 1000u);
}

TEST(SplitNodesTest, InvalidInputsRejected) {
  EXPECT_THROW(split_nodes(iota_nodes(2), {0.7, 0.1, 0.2}, 0), ValidationError);
  EXPECT_THROW(split_nodes(iota_nodes(10), {0.7, 0.2, 0.2}, 0), ValidationError);
  EXPECT_THROW(split_nodes(iota_nodes(10), {1.0, 0.0, 0.0}, 0), ValidationError);
}

TEST(SplitNodesTest, SizesFollowFloorArithmeticForManySizes) {
  for (std::size_t n = 3; n < 200; n += 7) {
    const SplitMasks s = split_nodes(iota_nodes(n), {0.7, 0.1, 0.2}, n);
    EXPECT_EQ(s.val.size(), floor_count(0.1, n));
    EXPECT_EQ(s.test.size(), floor_count(0.2, n));
    EXPECT_EQ(s.train.size(), n - s.val.size() - s.test.size());
  }
}

TEST(LinkSplitTest, TenPositivesSplitFiveTwoThree) {
  std::vector<Edge> ten;
  for (NodeId i = 0; i < 10; ++i) {
    ten.push_back(Edge{i, static_cast<NodeId>(i + 1)});
  }
  const EdgeSet pos = EdgeSet::from_edges(ten);
  const LinkSplit s = split_edges_for_linkpred(pos, 20, pos, {0.5, 0.2, 0.3}, 3);
  EXPECT_EQ(s.train_pos.size(), 5u);
  EXPECT_EQ(s.val_pos.size(), 2u);
  EXPECT_EQ(s.test_pos.size(), 3u);
  EXPECT_EQ(s.val_neg.size(), 2u);
  EXPECT_EQ(s.test_neg.size(), 3u);
}

TEST(LinkSplitTest, NegativesNeverOverlapPositives) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const EdgeSet pos = testing::random_edges(25, 0.2, seed);
    const LinkSplit s = split_edges_for_linkpred(pos, 25, pos, {0.5, 0.2, 0.3}, seed);
    std::vector<Edge> neg = s.val_neg;
    neg.insert(neg.end(), s.test_neg.begin(), s.test_neg.end());
    const EdgeSet negs = EdgeSet::from_edges(neg);
    EXPECT_EQ(negs.size(), neg.size());
    EXPECT_TRUE(edge_intersection(negs, pos).empty());
    std::vector<Edge> all = s.train_pos;
    all.insert(all.end(), s.val_pos.begin(), s.val_pos.end());
    all.insert(all.end(), s.test_pos.begin(), s.test_pos.end());
    EXPECT_EQ(EdgeSet::from_edges(all), pos);
  }
}

TEST(LinkSplitTest, TooFewEdgesRejected) {
  const EdgeSet two = EdgeSet::from_pairs(std::vector<std::pair<NodeId, NodeId>>{{0, 1}, {1, 2}});
  EXPECT_THROW(split_edges_for_linkpred(two, 5, two, {0.5, 0.2, 0.3}, 0), ValidationError);
}

TEST(NegativeSamplingTest, UniformOverNonEdges) {
  // 4 nodes, 2 edges: the 4 remaining pairs should be equally likely.
  const EdgeSet known = EdgeSet::from_pairs(std::vector<std::pair<NodeId, NodeId>>{{0, 1}, {2, 3}});
  Rng rng(99);
  std::map<std::pair<NodeId, NodeId>, int> counts;
  const int draws = 10000;
  for (int i = 0; i < draws; ++i) {
    const auto e = sample_negatives(4, known, 1, rng).at(0);
    ASSERT_FALSE(known.contains(e.u, e.v));
    ++counts[{e.u, e.v}];
  }
  ASSERT_EQ(counts.size(), 4u);
  double chi2 = 0.0;
  for (const auto& [pair, c] : counts) {
    const double expected = draws / 4.0;
    chi2 += (c - expected) * (c - expected) / expected;
  }
  // 11.34 is the p = 0.01 critical value with 3 degrees of freedom.
  EXPECT_LT(chi2, 11.34);
}

TEST(SynthHeteroTest, ZeroNoiseLeavesTargetRelationClean) {
  const SynthHetero s = synth_hetero(40, 30, 1, 0.0);
  EXPECT_EQ(s.clean.undirected_edges(kBBRelation), s.noisy.undirected_edges(kBBRelation));
  EXPECT_TRUE(s.clean == s.noisy);
}

TEST(SynthHeteroTest, NoiseTouchesOnlyTargetRelation) {
  const SynthHetero s = synth_hetero(40, 30, 1, 0.2);
  const EdgeSet clean = s.clean.undirected_edges(kBBRelation);
  const EdgeSet noisy = s.noisy.undirected_edges(kBBRelation);
  EXPECT_EQ(noisy.size(), clean.size() + floor_count(0.2, clean.size()));
  EXPECT_EQ(s.clean.undirected_edges(kAARelation), s.noisy.undirected_edges(kAARelation));
  EXPECT_EQ(s.clean.find_relation(kABRelation)->pairs, s.noisy.find_relation(kABRelation)->pairs);
}

TEST(SynthHeteroTest, WithinClusterEdgesDominate) {
  const SynthHetero s = synth_hetero(200, 200, 5, 0.0);
  std::size_t within = 0;
  std::size_t cross = 0;
  for (const auto& e : s.clean.undirected_edges(kBBRelation)) {
    (s.cluster_b[e.u] == s.cluster_b[e.v] ? within : cross) += 1;
  }
  // Compare edge densities: 4 balanced clusters give 4 * C(50, 2) within pairs.
  const double within_pairs = 4.0 * 50 * 49 / 2;
  const double cross_pairs = 200.0 * 199 / 2 - within_pairs;
  EXPECT_GT(within / within_pairs, cross / cross_pairs);
  EXPECT_GT(within, cross);
}

TEST(SynthHeteroTest, SameSeedIsBitwiseIdentical) {
  const SynthHetero a = synth_hetero(30, 20, 8, 0.2);
  const SynthHetero b = synth_hetero(30, 20, 8, 0.2);
  EXPECT_TRUE(a.clean == b.clean);
  EXPECT_TRUE(a.noisy == b.noisy);
  EXPECT_FALSE(a.clean == synth_hetero(30, 20, 9, 0.2).clean);
}

TEST(SynthHeteroTest, SizeChecks) {
  EXPECT_THROW(synth_hetero(9, 20, 0, 0.1), ValidationError);
  EXPECT_THROW(synth_hetero(20, 5, 0, 0.1), ValidationError);
}

}  // namespace
}  // namespace lsc
