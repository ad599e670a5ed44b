#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lsc/nn/message_index.hpp"
#include "lsc/nn/parameter.hpp"

namespace lsc {

inline constexpr double kGatLeakySlope = 0.2;

// Single-head graph attention. Messages must include self-loops.
struct GatLayer {
  Tensor W;  // [in x out]
  Tensor a;  // [2*out]: first half scores the destination, second half the source
  double leaky_slope = kGatLeakySlope;

  GatLayer(std::size_t in_dim, std::size_t out_dim, std::uint64_t seed, const std::string& path);
  GatLayer(Tensor W, Tensor a, double slope = kGatLeakySlope);

  // Raw per-message scores LeakyReLU(a . [W h_dst || W h_src]) as [E x 1].
  Tensor scores(const Tensor& h, const MessageIndex& m) const;
  // Softmax of scores over each destination's incoming messages.
  Tensor attention(const Tensor& h, const MessageIndex& m) const;
  // Pre-activation output sum_j alpha_ij W h_j.
  Tensor forward(const Tensor& h, const MessageIndex& m) const;
  std::vector<NamedParameter> parameters(const std::string& path) const;
};

// D^-1/2 (A + I) D^-1/2 H W. Messages must include self-loops.
struct GcnLayer {
  Tensor W;

  GcnLayer(std::size_t in_dim, std::size_t out_dim, std::uint64_t seed, const std::string& path);
  explicit GcnLayer(Tensor W);

  Tensor forward(const Tensor& h, const MessageIndex& m) const;
  std::vector<NamedParameter> parameters(const std::string& path) const;
};

// h W_self + mean_{j in N(i)} h_j W_neigh; an empty neighborhood contributes 0.
struct SageLayer {
  Tensor W_self;
  Tensor W_neigh;

  SageLayer(std::size_t in_dim, std::size_t out_dim, std::uint64_t seed, const std::string& path);
  SageLayer(Tensor W_self, Tensor W_neigh);

  Tensor forward(const Tensor& h, const MessageIndex& m) const;
  std::vector<NamedParameter> parameters(const std::string& path) const;
};

// Mean over each destination's incoming messages of (h_src W).
Tensor mean_neighbor_term(const Tensor& h_src, const Tensor& W, const MessageIndex& m);

// x W (+ b). The bias, when present, starts at zero.
struct Linear {
  Tensor W;
  Tensor b;  // undefined when bias-free

  Linear(std::size_t in_dim, std::size_t out_dim, bool bias, std::uint64_t seed, const std::string& path);

  Tensor forward(const Tensor& x) const;
  std::vector<NamedParameter> parameters(const std::string& path) const;
};

}  // namespace lsc
