#include "lsc/nn/layers.hpp"

#include "lsc/core/error.hpp"

namespace lsc {
namespace {

void check_input(const Tensor& h, const Tensor& W, std::size_t num_nodes, const char* layer) {
  if (h.rank() != 2 || h.dim(1) != W.dim(0)) {
    throw DimensionError(std::string(layer) + " expects input [n x " + std::to_string(W.dim(0)) + "], got " +
                         shape_string(h.shape()));
  }
  if (h.dim(0) != num_nodes) {
    throw DimensionError(std::string(layer) + " input has " + std::to_string(h.dim(0)) +
                         " rows but the graph has " + std::to_string(num_nodes) + " nodes");
  }
}

// e = LeakyReLU(a_dst . wh[dst] + a_src . wh[src]); both halves of `a` are
// applied as one [out x 2] product before gathering per message.
Tensor gat_scores(const Tensor& wh, const Tensor& a, double slope, const MessageIndex& m) {
  const Tensor a2 = transpose(reshape(a, {2, wh.dim(1)}));
  const Tensor s = matmul(wh, a2);
  return leaky_relu(add(gather_rows(select_column(s, 0), m.dst), gather_rows(select_column(s, 1), m.src)), slope);
}

}  // namespace

GatLayer::GatLayer(std::size_t in_dim, std::size_t out_dim, std::uint64_t seed, const std::string& path)
    : W(glorot_uniform({in_dim, out_dim}, in_dim, out_dim, seed, path + "/W")),
      a(glorot_uniform({2 * out_dim}, 2 * out_dim, 1, seed, path + "/a")) {}

GatLayer::GatLayer(Tensor W_, Tensor a_, double slope) : W(std::move(W_)), a(std::move(a_)), leaky_slope(slope) {
  if (W.rank() != 2 || a.numel() != 2 * W.dim(1)) {
    throw DimensionError("attention vector must have 2 * out_dim entries");
  }
}

Tensor GatLayer::scores(const Tensor& h, const MessageIndex& m) const {
  check_input(h, W, m.num_dst, "GAT layer");
  return gat_scores(matmul(h, W), a, leaky_slope, m);
}

Tensor GatLayer::attention(const Tensor& h, const MessageIndex& m) const {
  return segment_softmax(scores(h, m), m.dst, m.num_dst);
}

Tensor GatLayer::forward(const Tensor& h, const MessageIndex& m) const {
  check_input(h, W, m.num_dst, "GAT layer");
  const Tensor wh = matmul(h, W);
  const Tensor alpha = segment_softmax(gat_scores(wh, a, leaky_slope, m), m.dst, m.num_dst);
  return scatter_sum(scale_rows(gather_rows(wh, m.src), alpha), m.dst, m.num_dst);
}

std::vector<NamedParameter> GatLayer::parameters(const std::string& path) const {
  return {{path + "/W", W}, {path + "/a", a}};
}

GcnLayer::GcnLayer(std::size_t in_dim, std::size_t out_dim, std::uint64_t seed, const std::string& path)
    : W(glorot_uniform({in_dim, out_dim}, in_dim, out_dim, seed, path + "/W")) {}

GcnLayer::GcnLayer(Tensor W_) : W(std::move(W_)) {}

Tensor GcnLayer::forward(const Tensor& h, const MessageIndex& m) const {
  check_input(h, W, m.num_dst, "GCN layer");
  if (m.sym_weight.size() != m.size()) {
    throw ContractError("GCN layer needs a square message index");
  }
  const Tensor hw = matmul(h, W);
  const Tensor norm = Tensor::from_values({m.size()}, m.sym_weight);
  return scatter_sum(scale_rows(gather_rows(hw, m.src), norm), m.dst, m.num_dst);
}

std::vector<NamedParameter> GcnLayer::parameters(const std::string& path) const { return {{path + "/W", W}}; }

Tensor mean_neighbor_term(const Tensor& h_src, const Tensor& W, const MessageIndex& m) {
  if (h_src.rank() != 2 || h_src.dim(0) != m.num_src || h_src.dim(1) != W.dim(0)) {
    throw DimensionError("neighbor input " + shape_string(h_src.shape()) + " does not match [" +
                         std::to_string(m.num_src) + " x " + std::to_string(W.dim(0)) + "]");
  }
  // Projecting before aggregating keeps the gathered rows narrow.
  const Tensor hw = matmul(h_src, W);
  const Tensor weight = Tensor::from_values({m.size()}, m.mean_weight);
  return scatter_sum(scale_rows(gather_rows(hw, m.src), weight), m.dst, m.num_dst);
}

SageLayer::SageLayer(std::size_t in_dim, std::size_t out_dim, std::uint64_t seed, const std::string& path)
    : W_self(glorot_uniform({in_dim, out_dim}, in_dim, out_dim, seed, path + "/W_self")),
      W_neigh(glorot_uniform({in_dim, out_dim}, in_dim, out_dim, seed, path + "/W_neigh")) {}

SageLayer::SageLayer(Tensor W_self_, Tensor W_neigh_) : W_self(std::move(W_self_)), W_neigh(std::move(W_neigh_)) {}

Tensor SageLayer::forward(const Tensor& h, const MessageIndex& m) const {
  check_input(h, W_self, m.num_dst, "SAGE layer");
  return add(matmul(h, W_self), mean_neighbor_term(h, W_neigh, m));
}

std::vector<NamedParameter> SageLayer::parameters(const std::string& path) const {
  return {{path + "/W_self", W_self}, {path + "/W_neigh", W_neigh}};
}

Linear::Linear(std::size_t in_dim, std::size_t out_dim, bool bias, std::uint64_t seed, const std::string& path)
    : W(glorot_uniform({in_dim, out_dim}, in_dim, out_dim, seed, path + "/W")) {
  if (bias) {
    b = Tensor::zeros({out_dim}, true);
  }
}

Tensor Linear::forward(const Tensor& x) const {
  Tensor y = matmul(x, W);
  return b.defined() ? add_row_broadcast(y, b) : y;
}

std::vector<NamedParameter> Linear::parameters(const std::string& path) const {
  std::vector<NamedParameter> out{{path + "/W", W}};
  if (b.defined()) {
    out.push_back({path + "/b", b});
  }
  return out;
}

}  // namespace lsc
