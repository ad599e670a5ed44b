#include "lsc/nn/parameter.hpp"

#include <algorithm>
#include <cmath>

#include "lsc/core/error.hpp"
#include "lsc/core/rng.hpp"

namespace lsc {

Tensor glorot_uniform(const Shape& shape, std::size_t fan_in, std::size_t fan_out, std::uint64_t seed,
                      const std::string& path) {
  const double limit = std::sqrt(6.0 / static_cast<double>(fan_in + fan_out));
  Rng rng(seed, path);
  std::vector<double> v(shape_numel(shape));
  for (auto& x : v) {
    x = rng.uniform(-limit, limit);
  }
  return Tensor::from_values(shape, std::move(v), true);
}

std::vector<Tensor> tensors_of(std::span<const NamedParameter> params) {
  std::vector<Tensor> out;
  out.reserve(params.size());
  for (const auto& p : params) {
    out.push_back(p.tensor);
  }
  return out;
}

std::size_t count_scalars(std::span<const NamedParameter> params) {
  std::size_t n = 0;
  for (const auto& p : params) {
    n += p.tensor.numel();
  }
  return n;
}

std::vector<std::vector<double>> snapshot(std::span<const NamedParameter> params) {
  std::vector<std::vector<double>> out;
  out.reserve(params.size());
  for (const auto& p : params) {
    const auto v = p.tensor.values();
    out.emplace_back(v.begin(), v.end());
  }
  return out;
}

void restore(std::span<const NamedParameter> params, const std::vector<std::vector<double>>& values) {
  if (values.size() != params.size()) {
    throw ContractError("snapshot holds " + std::to_string(values.size()) + " tensors, model has " +
                        std::to_string(params.size()));
  }
  for (std::size_t i = 0; i < params.size(); ++i) {
    if (values[i].size() != params[i].tensor.numel()) {
      throw DimensionError("snapshot size mismatch for " + params[i].path);
    }
    Tensor handle = params[i].tensor;
    std::copy(values[i].begin(), values[i].end(), handle.mutable_values().begin());
  }
}

}  // namespace lsc
