#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "lsc/tensor/tensor.hpp"

namespace lsc {

// A trainable tensor and its stable path, e.g. "f/layer0/W".
struct NamedParameter {
  std::string path;
  Tensor tensor;
};

// Glorot-uniform [fan_in x fan_out] leaf with requires_grad. Values come from
// the stream derive_seed(seed, path), so a parameter's initial value depends
// only on the master seed and its own path.
Tensor glorot_uniform(const Shape& shape, std::size_t fan_in, std::size_t fan_out, std::uint64_t seed,
                      const std::string& path);

std::vector<Tensor> tensors_of(std::span<const NamedParameter> params);
std::size_t count_scalars(std::span<const NamedParameter> params);

// Value copies used for best-epoch checkpointing.
std::vector<std::vector<double>> snapshot(std::span<const NamedParameter> params);
void restore(std::span<const NamedParameter> params, const std::vector<std::vector<double>>& values);

}  // namespace lsc
