#include "lsc/graph/graph.hpp"

#include <algorithm>
#include <string>

#include "lsc/core/error.hpp"

namespace lsc {

Adjacency build_adjacency(std::size_t num_nodes, const EdgeSet& edges) {
  Adjacency adj;
  adj.offsets.assign(num_nodes + 1, 0);
  for (const auto& e : edges) {
    if (e.v >= num_nodes) {
      throw IndexError("edge (" + std::to_string(e.u) + "," + std::to_string(e.v) + ") exceeds " +
                       std::to_string(num_nodes) + " nodes");
    }
    ++adj.offsets[e.u + 1];
    ++adj.offsets[e.v + 1];
  }
  for (std::size_t i = 0; i < num_nodes; ++i) {
    adj.offsets[i + 1] += adj.offsets[i];
  }
  adj.targets.resize(adj.offsets.back());
  std::vector<std::size_t> cursor(adj.offsets.begin(), adj.offsets.end() - 1);
  for (const auto& e : edges) {
    adj.targets[cursor[e.u]++] = e.v;
    adj.targets[cursor[e.v]++] = e.u;
  }
  for (std::size_t i = 0; i < num_nodes; ++i) {
    std::sort(adj.targets.begin() + static_cast<std::ptrdiff_t>(adj.offsets[i]),
              adj.targets.begin() + static_cast<std::ptrdiff_t>(adj.offsets[i + 1]));
  }
  return adj;
}

Graph::Graph(std::size_t num_nodes, Tensor features, EdgeSet edges, std::vector<int> labels,
             std::size_t num_classes)
    : num_nodes_(num_nodes),
      features_(std::move(features)),
      edges_(std::move(edges)),
      labels_(std::move(labels)),
      num_classes_(num_classes) {
  if (!features_.defined() || features_.rank() != 2 || features_.dim(0) != num_nodes_) {
    throw ValidationError("graph features must be a [" + std::to_string(num_nodes_) + " x F] matrix, got " +
                          (features_.defined() ? shape_string(features_.shape()) : std::string("none")));
  }
  if (edges_.node_bound() > num_nodes_) {
    throw ValidationError("edge endpoint " + std::to_string(edges_.node_bound() - 1) + " outside " +
                          std::to_string(num_nodes_) + " nodes");
  }
  if (!labels_.empty()) {
    if (labels_.size() != num_nodes_) {
      throw ValidationError("expected " + std::to_string(num_nodes_) + " labels, got " +
                            std::to_string(labels_.size()));
    }
    for (std::size_t i = 0; i < labels_.size(); ++i) {
      if (labels_[i] < -1 || labels_[i] >= static_cast<int>(num_classes_)) {
        throw ValidationError("label " + std::to_string(labels_[i]) + " of node " + std::to_string(i) +
                              " outside [0," + std::to_string(num_classes_) + ")");
      }
    }
  }
  adjacency_ = build_adjacency(num_nodes_, edges_);
}

Graph assemble(std::size_t num_nodes, Tensor features, EdgeSet edges, std::vector<int> labels,
               std::size_t num_classes) {
  return Graph(num_nodes, std::move(features), std::move(edges), std::move(labels), num_classes);
}

Graph with_edges(const Graph& g, EdgeSet edges) {
  return Graph(g.num_nodes(), g.features(), std::move(edges), g.labels(), g.num_classes());
}

Adjacency with_self_loops(const Graph& g) {
  const Adjacency& base = g.adjacency();
  Adjacency adj;
  const std::size_t n = g.num_nodes();
  adj.offsets.assign(n + 1, 0);
  adj.targets.reserve(base.num_entries() + n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto nb = base.neighbors(i);
    const auto self = static_cast<NodeId>(i);
    const auto pos = std::lower_bound(nb.begin(), nb.end(), self);
    adj.targets.insert(adj.targets.end(), nb.begin(), pos);
    adj.targets.push_back(self);
    adj.targets.insert(adj.targets.end(), pos, nb.end());
    adj.offsets[i + 1] = adj.targets.size();
  }
  return adj;
}

EdgeSet induced_edges(const Graph& g, std::span<const NodeId> nodes) {
  std::vector<char> member(g.num_nodes(), 0);
  for (const auto v : nodes) {
    if (v >= g.num_nodes()) {
      throw IndexError("node " + std::to_string(v) + " outside graph of " + std::to_string(g.num_nodes()) +
                       " nodes");
    }
    member[v] = 1;
  }
  std::vector<Edge> out;
  for (const auto& e : g.edges()) {
    if (member[e.u] && member[e.v]) {
      out.push_back(e);
    }
  }
  return EdgeSet::from_edges(std::move(out));
}

}  // namespace lsc
