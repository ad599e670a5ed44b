#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "lsc/core/rng.hpp"
#include "lsc/graph/graph.hpp"

namespace lsc {

struct DecompositionSpec {
  double target_ratio = 0.7;  // in (0, 1]
  std::uint64_t seed = 0;
};

struct PerturbationSpec {
  double rate = 0.0;  // injected edges per target edge
  std::uint64_t seed = 0;
};

struct Decomposition {
  std::vector<NodeId> target_nodes;  // sorted
  EdgeSet target_edges;              // E_t, induced on target_nodes
  EdgeSet reg_edges;                 // E_r = E \ E_t
  Graph reg_graph;                   // all N nodes, edges E_r
};

// Samples round(ratio * N) target nodes uniformly without replacement.
Decomposition decompose(const Graph& g, const DecompositionSpec& spec);

// E_t plus floor(rate * |E_t|) uniformly drawn non-edges among target_nodes.
EdgeSet inject_noise(std::span<const NodeId> target_nodes, const EdgeSet& target_edges,
                     const PerturbationSpec& spec);

// `count` distinct pairs drawn uniformly from the pairs of `nodes` that are
// not in `excluded`. Throws ValidationError when too few such pairs exist.
std::vector<Edge> sample_non_edges(std::span<const NodeId> nodes, const EdgeSet& excluded, std::size_t count,
                                   Rng& rng);

}  // namespace lsc
