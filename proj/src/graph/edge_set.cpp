#include "lsc/graph/edge_set.hpp"

#include <algorithm>
#include <iterator>
#include <string>

#include "lsc/core/error.hpp"

namespace lsc {

EdgeSet EdgeSet::from_pairs(std::span<const std::pair<NodeId, NodeId>> pairs) {
  std::vector<Edge> edges;
  edges.reserve(pairs.size());
  for (const auto& [a, b] : pairs) {
    edges.push_back(Edge{std::min(a, b), std::max(a, b)});
  }
  return from_edges(std::move(edges));
}

EdgeSet EdgeSet::from_edges(std::vector<Edge> edges) {
  for (auto& e : edges) {
    if (e.u == e.v) {
      throw ValidationError("self-loop (" + std::to_string(e.u) + "," + std::to_string(e.v) +
                            ") is not allowed in an edge set");
    }
    if (e.u > e.v) {
      std::swap(e.u, e.v);
    }
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  EdgeSet set;
  set.edges_ = std::move(edges);
  return set;
}

bool EdgeSet::contains(NodeId a, NodeId b) const noexcept {
  const Edge key{std::min(a, b), std::max(a, b)};
  return std::binary_search(edges_.begin(), edges_.end(), key);
}

std::size_t EdgeSet::node_bound() const noexcept {
  std::size_t bound = 0;
  for (const auto& e : edges_) {
    bound = std::max<std::size_t>(bound, static_cast<std::size_t>(e.v) + 1);
  }
  return bound;
}

EdgeSet edge_difference(const EdgeSet& a, const EdgeSet& b) {
  std::vector<Edge> out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return EdgeSet::from_edges(std::move(out));
}

EdgeSet edge_union(const EdgeSet& a, const EdgeSet& b) {
  std::vector<Edge> out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return EdgeSet::from_edges(std::move(out));
}

EdgeSet edge_intersection(const EdgeSet& a, const EdgeSet& b) {
  std::vector<Edge> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return EdgeSet::from_edges(std::move(out));
}

}  // namespace lsc
