#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "lsc/graph/hetero_graph.hpp"
#include "lsc/nn/layers.hpp"

namespace lsc {

struct PreparedHetero {
  std::map<std::string, Tensor> features;
  std::map<RelationKey, MessageIndex> messages;
};

PreparedHetero prepare(const HeteroGraph& g);

// Relational SAGE encoder. At depth k a node of type T is updated as
//   h_T W_self[k][T] + sum over relations r with dst T of mean_r(h_src) W_neigh[k][r]
// with relations visited in key order. When node types have different
// feature widths, each type is first mapped to layer_dims[0] by a learned
// bias-free projection.
class HeteroEncoder {
 public:
  HeteroEncoder(const std::map<std::string, std::size_t>& type_dims, const std::vector<RelationKey>& relations,
                std::vector<std::size_t> layer_dims, std::string path, std::uint64_t seed);

  // Throws ConfigError when the graph carries a relation this encoder has no
  // layer for. Encoder relations absent from the graph contribute nothing.
  std::map<std::string, Tensor> encode(const HeteroGraph& g) const;
  std::map<std::string, Tensor> encode(const PreparedHetero& g) const;

  std::size_t num_layers() const noexcept { return depths_.size(); }
  std::size_t out_dim() const noexcept { return dims_.back(); }
  bool has_projections() const noexcept { return !projections_.empty(); }
  const std::vector<RelationKey>& relations() const noexcept { return relations_; }

  Tensor& self_weight(std::size_t depth, const std::string& type);
  Tensor& neigh_weight(std::size_t depth, const RelationKey& key);

  std::vector<NamedParameter> parameters() const;

 private:
  struct Depth {
    std::map<std::string, Tensor> W_self;
    std::map<RelationKey, Tensor> W_neigh;
  };

  std::map<std::string, std::size_t> type_dims_;
  std::vector<RelationKey> relations_;
  std::vector<std::size_t> dims_;
  std::string path_;
  std::map<std::string, Linear> projections_;
  std::vector<Depth> depths_;
};

}  // namespace lsc
