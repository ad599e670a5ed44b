#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "lsc/core/rng.hpp"
#include "lsc/graph/edge_set.hpp"

namespace lsc {

// Disjoint train/validation/test partition of a node list, each part sorted.
struct SplitMasks {
  std::vector<NodeId> train;
  std::vector<NodeId> val;
  std::vector<NodeId> test;
};

// Validation and test sizes are floor(ratio * n); train takes the remainder.
SplitMasks split_nodes(std::span<const NodeId> nodes, std::array<double, 3> ratios, std::uint64_t seed);

// Boolean membership over [0, num_nodes).
std::vector<char> to_mask(std::span<const NodeId> nodes, std::size_t num_nodes);

struct LinkSplit {
  std::vector<Edge> train_pos;
  std::vector<Edge> val_pos;
  std::vector<Edge> test_pos;
  // Fixed negatives, one per positive, disjoint from each other and from
  // every edge in the `known` set passed to split_edges_for_linkpred.
  std::vector<Edge> val_neg;
  std::vector<Edge> test_neg;
};

// Partitions `edges` among `num_nodes` same-type nodes 50/20/30 (by default)
// with floor arithmetic for validation and test. Negatives avoid `known`,
// which should contain every edge that must not appear as a negative.
LinkSplit split_edges_for_linkpred(const EdgeSet& edges, std::size_t num_nodes, const EdgeSet& known,
                                   std::array<double, 3> ratios, std::uint64_t seed);

// Per-epoch training negatives: `count` uniform non-edges of `known`.
std::vector<Edge> sample_negatives(std::size_t num_nodes, const EdgeSet& known, std::size_t count, Rng& rng);

}  // namespace lsc
