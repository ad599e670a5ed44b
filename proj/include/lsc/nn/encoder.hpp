#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "lsc/nn/layers.hpp"

namespace lsc {

enum class LayerKind { kGat, kGcn, kSage };

std::string_view layer_kind_name(LayerKind kind);

// Message index an encoder of `kind` runs on: GAT and GCN add self-loops,
// SAGE uses the plain adjacency.
struct PreparedGraph {
  Tensor features;
  MessageIndex messages;
};

PreparedGraph prepare(const Graph& g, LayerKind kind);

// Stack of message-passing layers with ELU between layers and an identity
// output, mapping [N x in_dim] features to [N x layer_dims.back()].
class Encoder {
 public:
  // Parameters live under "<path>/layer<k>/..." and are initialised from
  // derive_seed(seed, parameter path).
  Encoder(LayerKind kind, std::size_t in_dim, std::vector<std::size_t> layer_dims, std::string path,
          std::uint64_t seed);

  Tensor encode(const Graph& g) const;
  Tensor encode(const PreparedGraph& g) const;

  LayerKind kind() const noexcept { return kind_; }
  std::size_t in_dim() const noexcept { return in_dim_; }
  std::size_t out_dim() const noexcept { return dims_.back(); }
  std::size_t num_layers() const noexcept { return layers_.size(); }
  const std::string& path() const noexcept { return path_; }

  using Layer = std::variant<GatLayer, GcnLayer, SageLayer>;
  const Layer& layer(std::size_t k) const { return layers_.at(k); }
  Layer& layer(std::size_t k) { return layers_.at(k); }

  std::vector<NamedParameter> parameters() const;

 private:
  LayerKind kind_;
  std::size_t in_dim_;
  std::vector<std::size_t> dims_;
  std::string path_;
  std::vector<Layer> layers_;
};

}  // namespace lsc
