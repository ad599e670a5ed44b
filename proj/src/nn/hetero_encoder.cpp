#include "lsc/nn/hetero_encoder.hpp"

#include <algorithm>

#include "lsc/core/error.hpp"

namespace lsc {

PreparedHetero prepare(const HeteroGraph& g) {
  PreparedHetero p;
  for (const auto& [name, t] : g.node_types()) {
    p.features.emplace(name, t.features);
  }
  for (const auto& [key, rel] : g.relations()) {
    p.messages.emplace(key, MessageIndex::from_adjacency(rel.incoming, g.node_type(key.src).num_nodes));
  }
  return p;
}

HeteroEncoder::HeteroEncoder(const std::map<std::string, std::size_t>& type_dims,
                             const std::vector<RelationKey>& relations, std::vector<std::size_t> layer_dims,
                             std::string path, std::uint64_t seed)
    : type_dims_(type_dims), relations_(relations), dims_(std::move(layer_dims)), path_(std::move(path)) {
  if (dims_.empty()) {
    throw ConfigError("hetero encoder '" + path_ + "' needs at least one layer");
  }
  if (type_dims_.empty()) {
    throw ConfigError("hetero encoder '" + path_ + "' has no node types");
  }
  std::sort(relations_.begin(), relations_.end());
  relations_.erase(std::unique(relations_.begin(), relations_.end()), relations_.end());
  for (const auto& key : relations_) {
    if (!type_dims_.count(key.src) || !type_dims_.count(key.dst)) {
      throw ConfigError("relation " + key.str() + " references an unknown node type");
    }
  }

  std::size_t width = type_dims_.begin()->second;
  const bool uniform = std::all_of(type_dims_.begin(), type_dims_.end(),
                                   [&](const auto& kv) { return kv.second == width; });
  if (!uniform) {
    width = dims_.front();
    for (const auto& [type, dim] : type_dims_) {
      projections_.emplace(type, Linear(dim, width, false, seed, path_ + "/proj/" + type));
    }
  }

  std::size_t prev = width;
  for (std::size_t k = 0; k < dims_.size(); ++k) {
    const std::string lp = path_ + "/layer" + std::to_string(k);
    Depth d;
    for (const auto& [type, dim] : type_dims_) {
      const std::string p = lp + "/self/" + type;
      d.W_self.emplace(type, glorot_uniform({prev, dims_[k]}, prev, dims_[k], seed, p));
    }
    for (const auto& key : relations_) {
      const std::string p = lp + "/rel/" + key.str();
      d.W_neigh.emplace(key, glorot_uniform({prev, dims_[k]}, prev, dims_[k], seed, p));
    }
    depths_.push_back(std::move(d));
    prev = dims_[k];
  }
}

std::map<std::string, Tensor> HeteroEncoder::encode(const HeteroGraph& g) const { return encode(prepare(g)); }

std::map<std::string, Tensor> HeteroEncoder::encode(const PreparedHetero& g) const {
  for (const auto& [key, m] : g.messages) {
    if (!depths_.front().W_neigh.count(key)) {
      throw ConfigError("hetero encoder '" + path_ + "' has no layer for relation " + key.str());
    }
  }
  std::map<std::string, Tensor> h;
  for (const auto& [type, dim] : type_dims_) {
    const auto it = g.features.find(type);
    if (it == g.features.end()) {
      throw ConfigError("graph lacks node type '" + type + "'");
    }
    if (it->second.dim(1) != dim) {
      throw DimensionError("node type '" + type + "' has " + std::to_string(it->second.dim(1)) +
                           " features, encoder expects " + std::to_string(dim));
    }
    h.emplace(type, projections_.empty() ? it->second : projections_.at(type).forward(it->second));
  }

  for (std::size_t k = 0; k < depths_.size(); ++k) {
    const Depth& d = depths_[k];
    std::map<std::string, Tensor> next;
    for (const auto& [type, W_self] : d.W_self) {
      Tensor out = matmul(h.at(type), W_self);
      for (const auto& [key, m] : g.messages) {
        if (key.dst == type) {
          out = add(out, mean_neighbor_term(h.at(key.src), d.W_neigh.at(key), m));
        }
      }
      next.emplace(type, k + 1 < depths_.size() ? elu(out) : out);
    }
    h = std::move(next);
  }
  return h;
}

Tensor& HeteroEncoder::self_weight(std::size_t depth, const std::string& type) {
  return depths_.at(depth).W_self.at(type);
}

Tensor& HeteroEncoder::neigh_weight(std::size_t depth, const RelationKey& key) {
  return depths_.at(depth).W_neigh.at(key);
}

std::vector<NamedParameter> HeteroEncoder::parameters() const {
  std::vector<NamedParameter> out;
  for (const auto& [type, proj] : projections_) {
    auto p = proj.parameters(path_ + "/proj/" + type);
    out.insert(out.end(), p.begin(), p.end());
  }
  for (std::size_t k = 0; k < depths_.size(); ++k) {
    const std::string lp = path_ + "/layer" + std::to_string(k);
    for (const auto& [type, W] : depths_[k].W_self) {
      out.push_back({lp + "/self/" + type, W});
    }
    for (const auto& [key, W] : depths_[k].W_neigh) {
      out.push_back({lp + "/rel/" + key.str(), W});
    }
  }
  return out;
}

}  // namespace lsc
