#include "lsc/nn/encoder.hpp"

#include "lsc/core/error.hpp"

namespace lsc {

std::string_view layer_kind_name(LayerKind kind) {
  switch (kind) {
    case LayerKind::kGat:
      return "gat";
    case LayerKind::kGcn:
      return "gcn";
    case LayerKind::kSage:
      return "sage";
  }
  return "?";
}

PreparedGraph prepare(const Graph& g, LayerKind kind) {
  PreparedGraph p;
  p.features = g.features();
  if (kind == LayerKind::kSage) {
    p.messages = MessageIndex::from_adjacency(g.adjacency(), g.num_nodes());
  } else {
    p.messages = MessageIndex::from_adjacency(with_self_loops(g), g.num_nodes());
  }
  return p;
}

Encoder::Encoder(LayerKind kind, std::size_t in_dim, std::vector<std::size_t> layer_dims, std::string path,
                 std::uint64_t seed)
    : kind_(kind), in_dim_(in_dim), dims_(std::move(layer_dims)), path_(std::move(path)) {
  if (dims_.empty()) {
    throw ConfigError("encoder '" + path_ + "' needs at least one layer");
  }
  if (in_dim_ == 0) {
    throw ConfigError("encoder '" + path_ + "' has zero input width");
  }
  std::size_t prev = in_dim_;
  for (std::size_t k = 0; k < dims_.size(); ++k) {
    if (dims_[k] == 0) {
      throw ConfigError("encoder '" + path_ + "' layer " + std::to_string(k) + " has zero width");
    }
    const std::string lp = path_ + "/layer" + std::to_string(k);
    switch (kind_) {
      case LayerKind::kGat:
        layers_.emplace_back(GatLayer(prev, dims_[k], seed, lp));
        break;
      case LayerKind::kGcn:
        layers_.emplace_back(GcnLayer(prev, dims_[k], seed, lp));
        break;
      case LayerKind::kSage:
        layers_.emplace_back(SageLayer(prev, dims_[k], seed, lp));
        break;
    }
    prev = dims_[k];
  }
}

Tensor Encoder::encode(const Graph& g) const { return encode(prepare(g, kind_)); }

Tensor Encoder::encode(const PreparedGraph& g) const {
  if (g.features.rank() != 2 || g.features.dim(1) != in_dim_) {
    throw DimensionError("encoder '" + path_ + "' expects " + std::to_string(in_dim_) + " input features, got " +
                         shape_string(g.features.shape()));
  }
  Tensor h = g.features;
  for (std::size_t k = 0; k < layers_.size(); ++k) {
    h = std::visit([&](const auto& layer) { return layer.forward(h, g.messages); }, layers_[k]);
    if (k + 1 < layers_.size()) {
      h = elu(h);
    }
  }
  return h;
}

std::vector<NamedParameter> Encoder::parameters() const {
  std::vector<NamedParameter> out;
  for (std::size_t k = 0; k < layers_.size(); ++k) {
    const std::string lp = path_ + "/layer" + std::to_string(k);
    auto params = std::visit([&](const auto& layer) { return layer.parameters(lp); }, layers_[k]);
    out.insert(out.end(), params.begin(), params.end());
  }
  return out;
}

}  // namespace lsc
