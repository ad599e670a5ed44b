#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "lsc/graph/edge_set.hpp"
#include "lsc/tensor/tensor.hpp"

namespace lsc {

// Compressed sparse rows: neighbors(i) = targets[offsets[i] .. offsets[i+1]).
// Each neighbor list is sorted ascending.
struct Adjacency {
  std::vector<std::size_t> offsets{0};
  std::vector<NodeId> targets;

  std::size_t num_nodes() const noexcept { return offsets.size() - 1; }
  std::size_t num_entries() const noexcept { return targets.size(); }
  std::size_t degree(std::size_t i) const { return offsets[i + 1] - offsets[i]; }
  std::span<const NodeId> neighbors(std::size_t i) const {
    return {targets.data() + offsets[i], offsets[i + 1] - offsets[i]};
  }
};

// Both directions of every undirected edge, rows sorted.
Adjacency build_adjacency(std::size_t num_nodes, const EdgeSet& edges);

// Undirected simple graph with node features and optional labels.
// Immutable after construction.
class Graph {
 public:
  Graph() = default;
  // Validates: features has num_nodes rows, edges within range, labels
  // empty or one per node in [-1, num_classes) where -1 means unlabeled.
  Graph(std::size_t num_nodes, Tensor features, EdgeSet edges, std::vector<int> labels,
        std::size_t num_classes);

  std::size_t num_nodes() const noexcept { return num_nodes_; }
  std::size_t num_edges() const noexcept { return edges_.size(); }
  std::size_t num_features() const { return features_.cols(); }
  std::size_t num_classes() const noexcept { return num_classes_; }

  const Tensor& features() const noexcept { return features_; }
  const EdgeSet& edges() const noexcept { return edges_; }
  const Adjacency& adjacency() const noexcept { return adjacency_; }
  const std::vector<int>& labels() const noexcept { return labels_; }
  bool has_labels() const noexcept { return !labels_.empty(); }

  std::size_t degree(std::size_t i) const { return adjacency_.degree(i); }
  std::span<const NodeId> neighbors(std::size_t i) const { return adjacency_.neighbors(i); }

 private:
  std::size_t num_nodes_ = 0;
  Tensor features_;
  EdgeSet edges_;
  Adjacency adjacency_;
  std::vector<int> labels_;
  std::size_t num_classes_ = 0;
};

// Builds a graph from edge-set algebra (G_t, G_r, G_f share features).
Graph assemble(std::size_t num_nodes, Tensor features, EdgeSet edges, std::vector<int> labels,
               std::size_t num_classes);

// Same node set and features with a different edge set.
Graph with_edges(const Graph& g, EdgeSet edges);

// Adjacency where every node also lists itself; the graph's edge set is untouched.
Adjacency with_self_loops(const Graph& g);

// Edges of `g` with both endpoints in `nodes`.
EdgeSet induced_edges(const Graph& g, std::span<const NodeId> nodes);

}  // namespace lsc
