#include "lsc/tensor/adam.hpp"

#include <cmath>
#include <string>

#include "lsc/core/error.hpp"
#include "lsc/simd/kernels.hpp"

namespace lsc {

Adam::Adam(std::vector<Tensor> params, AdamOptions options)
    : params_(std::move(params)), options_(options) {
  if (!(options_.lr > 0.0) || !(options_.epsilon > 0.0) || options_.beta1 < 0.0 || options_.beta1 >= 1.0 ||
      options_.beta2 < 0.0 || options_.beta2 >= 1.0) {
    throw ValidationError("Adam: invalid hyperparameters");
  }
  m_.reserve(params_.size());
  v_.reserve(params_.size());
  for (const auto& p : params_) {
    if (!p.is_leaf() || !p.requires_grad()) {
      throw ContractError("Adam: parameters must be leaves with requires_grad");
    }
    m_.emplace_back(p.numel(), 0.0);
    v_.emplace_back(p.numel(), 0.0);
  }
}

void Adam::step() {
  for (std::size_t i = 0; i < params_.size(); ++i) {
    if (!params_[i].has_grad()) {
      throw ContractError("Adam::step: parameter " + std::to_string(i) + " " +
                          shape_string(params_[i].shape()) + " has no gradient");
    }
  }
  ++step_;
  const double t = static_cast<double>(step_);
  const simd::AdamCoefficients c{
      options_.lr,
      options_.beta1,
      options_.beta2,
      options_.epsilon,
      1.0 - std::pow(options_.beta1, t),
      1.0 - std::pow(options_.beta2, t),
  };
  const auto& kern = simd::active();
  for (std::size_t i = 0; i < params_.size(); ++i) {
    auto& node = params_[i].node();
    kern.adam_update(node.values.size(), c, node.grad.data(), m_[i].data(), v_[i].data(), node.values.data());
    params_[i].zero_grad();
  }
}

}  // namespace lsc
