#include "lsc/graph/hetero_graph.hpp"

#include <algorithm>

#include "lsc/core/error.hpp"

namespace lsc {

void HeteroGraph::add_node_type(std::string name, Tensor features) {
  if (!features.defined() || features.rank() != 2) {
    throw ValidationError("node type '" + name + "' needs a feature matrix");
  }
  if (types_.count(name) != 0) {
    throw ValidationError("duplicate node type '" + name + "'");
  }
  NodeTypeData data{name, features.dim(0), std::move(features)};
  types_.emplace(std::move(name), std::move(data));
}

const NodeTypeData& HeteroGraph::node_type(const std::string& name) const {
  const auto it = types_.find(name);
  if (it == types_.end()) {
    throw ValidationError("unknown node type '" + name + "'");
  }
  return it->second;
}

std::vector<std::string> HeteroGraph::node_type_names() const {
  std::vector<std::string> names;
  for (const auto& [name, _] : types_) {
    names.push_back(name);
  }
  return names;
}

void HeteroGraph::insert_relation(RelationKey key, std::vector<std::pair<NodeId, NodeId>> pairs,
                                  bool is_reverse) {
  const std::size_t n_src = node_type(key.src).num_nodes;
  const std::size_t n_dst = node_type(key.dst).num_nodes;
  if (relations_.count(key) != 0) {
    throw ValidationError("duplicate relation " + key.str());
  }
  std::sort(pairs.begin(), pairs.end());
  pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());

  Relation rel;
  rel.key = key;
  rel.is_reverse = is_reverse;
  rel.incoming.offsets.assign(n_dst + 1, 0);
  for (const auto& [s, d] : pairs) {
    if (s >= n_src || d >= n_dst) {
      throw IndexError("relation " + key.str() + ": pair (" + std::to_string(s) + "," + std::to_string(d) +
                       ") out of range");
    }
    ++rel.incoming.offsets[d + 1];
  }
  for (std::size_t i = 0; i < n_dst; ++i) {
    rel.incoming.offsets[i + 1] += rel.incoming.offsets[i];
  }
  rel.incoming.targets.resize(pairs.size());
  std::vector<std::size_t> cursor(rel.incoming.offsets.begin(), rel.incoming.offsets.end() - 1);
  // Pairs are sorted by source, so each destination row ends up ascending.
  for (const auto& [s, d] : pairs) {
    rel.incoming.targets[cursor[d]++] = s;
  }
  rel.pairs = std::move(pairs);
  relations_.emplace(std::move(key), std::move(rel));
}

void HeteroGraph::add_undirected_relation(const std::string& type, const std::string& name,
                                          const EdgeSet& edges) {
  std::vector<std::pair<NodeId, NodeId>> pairs;
  pairs.reserve(2 * edges.size());
  for (const auto& e : edges) {
    pairs.emplace_back(e.u, e.v);
    pairs.emplace_back(e.v, e.u);
  }
  insert_relation(RelationKey{type, name, type}, std::move(pairs), false);
}

void HeteroGraph::add_bipartite_relation(const std::string& src, const std::string& name,
                                         const std::string& dst, std::vector<std::pair<NodeId, NodeId>> pairs) {
  if (src == dst) {
    throw ValidationError("bipartite relation " + name + " must connect two different node types");
  }
  std::vector<std::pair<NodeId, NodeId>> reversed;
  reversed.reserve(pairs.size());
  for (const auto& [s, d] : pairs) {
    reversed.emplace_back(d, s);
  }
  insert_relation(RelationKey{src, name, dst}, std::move(pairs), false);
  insert_relation(RelationKey{dst, "rev_" + name, src}, std::move(reversed), true);
}

const Relation* HeteroGraph::find_relation(const RelationKey& key) const {
  const auto it = relations_.find(key);
  return it == relations_.end() ? nullptr : &it->second;
}

std::size_t HeteroGraph::relation_edge_count(const RelationKey& key) const {
  const Relation* rel = find_relation(key);
  if (rel == nullptr) {
    return 0;
  }
  return key.src == key.dst ? rel->pairs.size() / 2 : rel->pairs.size();
}

EdgeSet HeteroGraph::undirected_edges(const RelationKey& key) const {
  const Relation* rel = find_relation(key);
  if (rel == nullptr) {
    return {};
  }
  if (key.src != key.dst) {
    throw ValidationError("relation " + key.str() + " is not a same-type relation");
  }
  std::vector<Edge> edges;
  for (const auto& [s, d] : rel->pairs) {
    if (s < d) {
      edges.push_back(Edge{s, d});
    }
  }
  return EdgeSet::from_edges(std::move(edges));
}

HeteroGraph HeteroGraph::with_undirected_relation(const RelationKey& key, const EdgeSet& edges) const {
  HeteroGraph out = filter_relations([&](const RelationKey& k) { return !(k == key); });
  out.add_undirected_relation(key.src, key.name, edges);
  return out;
}

bool operator==(const HeteroGraph& a, const HeteroGraph& b) {
  if (a.types_.size() != b.types_.size() || a.relations_.size() != b.relations_.size()) {
    return false;
  }
  for (const auto& [name, t] : a.types_) {
    const auto it = b.types_.find(name);
    if (it == b.types_.end() || it->second.num_nodes != t.num_nodes ||
        it->second.features.shape() != t.features.shape() ||
        !std::equal(t.features.values().begin(), t.features.values().end(),
                    it->second.features.values().begin())) {
      return false;
    }
  }
  for (const auto& [key, rel] : a.relations_) {
    const auto it = b.relations_.find(key);
    if (it == b.relations_.end() || it->second.pairs != rel.pairs) {
      return false;
    }
  }
  return true;
}

}  // namespace lsc
