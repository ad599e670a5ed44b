#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lsc/graph/graph.hpp"

namespace lsc {

struct RelationKey {
  std::string src;
  std::string name;
  std::string dst;

  // "src__name__dst", the form used in bundle file names.
  std::string str() const { return src + "__" + name + "__" + dst; }
  friend auto operator<=>(const RelationKey&, const RelationKey&) = default;
};

struct NodeTypeData {
  std::string name;
  std::size_t num_nodes = 0;
  Tensor features;
};

// Directed messages src -> dst of one relation, indexed by destination.
struct Relation {
  RelationKey key;
  // Sorted unique (src, dst) pairs.
  std::vector<std::pair<NodeId, NodeId>> pairs;
  // incoming.neighbors(d) lists the sources sending to destination d.
  Adjacency incoming;
  // Auto-generated reverse of a cross-type relation; not written to bundles.
  bool is_reverse = false;
};

// Typed node sets with per-type features and per-relation CSR edge sets.
class HeteroGraph {
 public:
  void add_node_type(std::string name, Tensor features);

  // Same-type undirected relation; both directions stored in one relation.
  void add_undirected_relation(const std::string& type, const std::string& name, const EdgeSet& edges);
  // Cross-type relation src -> dst plus its explicit reverse "rev_<name>".
  void add_bipartite_relation(const std::string& src, const std::string& name, const std::string& dst,
                              std::vector<std::pair<NodeId, NodeId>> pairs);

  bool has_node_type(const std::string& name) const { return types_.count(name) != 0; }
  const NodeTypeData& node_type(const std::string& name) const;
  std::vector<std::string> node_type_names() const;
  const std::map<std::string, NodeTypeData>& node_types() const noexcept { return types_; }

  const std::map<RelationKey, Relation>& relations() const noexcept { return relations_; }
  const Relation* find_relation(const RelationKey& key) const;
  std::size_t relation_edge_count(const RelationKey& key) const;

  // Canonical undirected edge set of a same-type relation.
  EdgeSet undirected_edges(const RelationKey& key) const;

  // Copy keeping all node types but only the relations accepted by `keep`.
  template <typename Predicate>
  HeteroGraph filter_relations(Predicate keep) const {
    HeteroGraph out;
    out.types_ = types_;
    for (const auto& [key, rel] : relations_) {
      if (keep(key)) {
        out.relations_.emplace(key, rel);
      }
    }
    return out;
  }

  // Copy with the undirected relation `key` replaced by `edges`.
  HeteroGraph with_undirected_relation(const RelationKey& key, const EdgeSet& edges) const;

  friend bool operator==(const HeteroGraph& a, const HeteroGraph& b);

 private:
  void insert_relation(RelationKey key, std::vector<std::pair<NodeId, NodeId>> pairs, bool is_reverse);

  std::map<std::string, NodeTypeData> types_;
  std::map<RelationKey, Relation> relations_;
};

}  // namespace lsc
