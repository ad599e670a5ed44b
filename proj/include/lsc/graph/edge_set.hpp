#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace lsc {

using NodeId = std::uint32_t;

// Undirected edge in canonical orientation (u < v).
struct Edge {
  NodeId u = 0;
  NodeId v = 0;

  friend auto operator<=>(const Edge&, const Edge&) = default;
};

// Sorted, deduplicated set of canonical undirected edges without self-pairs.
class EdgeSet {
 public:
  EdgeSet() = default;

  // Canonicalises (min,max), sorts and drops duplicates. Throws
  // ValidationError on a self-pair.
  static EdgeSet from_pairs(std::span<const std::pair<NodeId, NodeId>> pairs);
  static EdgeSet from_edges(std::vector<Edge> edges);

  std::size_t size() const noexcept { return edges_.size(); }
  bool empty() const noexcept { return edges_.empty(); }
  std::span<const Edge> edges() const noexcept { return edges_; }
  auto begin() const noexcept { return edges_.begin(); }
  auto end() const noexcept { return edges_.end(); }
  const Edge& operator[](std::size_t i) const { return edges_[i]; }

  bool contains(NodeId a, NodeId b) const noexcept;
  // Largest endpoint + 1, or 0 when empty.
  std::size_t node_bound() const noexcept;

  friend bool operator==(const EdgeSet&, const EdgeSet&) = default;

 private:
  std::vector<Edge> edges_;
};

// Pairs in `a` but not in `b`.
EdgeSet edge_difference(const EdgeSet& a, const EdgeSet& b);
EdgeSet edge_union(const EdgeSet& a, const EdgeSet& b);
EdgeSet edge_intersection(const EdgeSet& a, const EdgeSet& b);

}  // namespace lsc
