#include "lsc/sim/splits.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "lsc/core/error.hpp"
#include "lsc/sim/counts.hpp"
#include "lsc/sim/perturb.hpp"

namespace lsc {
namespace {

void check_ratios(const std::array<double, 3>& ratios) {
  for (const double r : ratios) {
    if (!(r > 0.0)) {
      throw ValidationError("split ratios must be positive");
    }
  }
  if (std::abs(ratios[0] + ratios[1] + ratios[2] - 1.0) > 1e-6) {
    throw ValidationError("split ratios must sum to 1");
  }
}

}  // namespace

SplitMasks split_nodes(std::span<const NodeId> nodes, std::array<double, 3> ratios, std::uint64_t seed) {
  check_ratios(ratios);
  const std::size_t n = nodes.size();
  if (n < 3) {
    throw ValidationError("cannot split " + std::to_string(n) + " nodes into train/validation/test");
  }
  const std::size_t n_val = floor_count(ratios[1], n);
  const std::size_t n_test = floor_count(ratios[2], n);

  std::vector<NodeId> order(nodes.begin(), nodes.end());
  Rng rng(seed, "split_nodes");
  rng.shuffle(std::span<NodeId>(order));

  SplitMasks s;
  s.val.assign(order.begin(), order.begin() + n_val);
  s.test.assign(order.begin() + n_val, order.begin() + n_val + n_test);
  s.train.assign(order.begin() + n_val + n_test, order.end());
  std::sort(s.train.begin(), s.train.end());
  std::sort(s.val.begin(), s.val.end());
  std::sort(s.test.begin(), s.test.end());
  return s;
}

std::vector<char> to_mask(std::span<const NodeId> nodes, std::size_t num_nodes) {
  std::vector<char> mask(num_nodes, 0);
  for (const auto v : nodes) {
    if (v >= num_nodes) {
      throw IndexError("node " + std::to_string(v) + " outside [0," + std::to_string(num_nodes) + ")");
    }
    mask[v] = 1;
  }
  return mask;
}

LinkSplit split_edges_for_linkpred(const EdgeSet& edges, std::size_t num_nodes, const EdgeSet& known,
                                   std::array<double, 3> ratios, std::uint64_t seed) {
  check_ratios(ratios);
  const std::size_t n = edges.size();
  if (n < 3) {
    throw ValidationError("link split needs at least 3 edges, got " + std::to_string(n));
  }
  const std::size_t n_val = floor_count(ratios[1], n);
  const std::size_t n_test = floor_count(ratios[2], n);

  std::vector<Edge> order(edges.begin(), edges.end());
  Rng rng(seed, "split_edges");
  rng.shuffle(std::span<Edge>(order));

  LinkSplit s;
  s.val_pos.assign(order.begin(), order.begin() + n_val);
  s.test_pos.assign(order.begin() + n_val, order.begin() + n_val + n_test);
  s.train_pos.assign(order.begin() + n_val + n_test, order.end());
  std::sort(s.train_pos.begin(), s.train_pos.end());
  std::sort(s.val_pos.begin(), s.val_pos.end());
  std::sort(s.test_pos.begin(), s.test_pos.end());

  Rng neg_rng(seed, "split_edges/negatives");
  auto negatives = sample_negatives(num_nodes, edge_union(edges, known), n_val + n_test, neg_rng);
  // sample_negatives returns sorted pairs; shuffle before dealing them out.
  neg_rng.shuffle(std::span<Edge>(negatives));
  s.val_neg.assign(negatives.begin(), negatives.begin() + n_val);
  s.test_neg.assign(negatives.begin() + n_val, negatives.end());
  std::sort(s.val_neg.begin(), s.val_neg.end());
  std::sort(s.test_neg.begin(), s.test_neg.end());
  return s;
}

std::vector<Edge> sample_negatives(std::size_t num_nodes, const EdgeSet& known, std::size_t count, Rng& rng) {
  std::vector<NodeId> nodes(num_nodes);
  std::iota(nodes.begin(), nodes.end(), NodeId{0});
  return sample_non_edges(nodes, known, count, rng);
}

}  // namespace lsc
