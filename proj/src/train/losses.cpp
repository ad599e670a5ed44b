#include "lsc/train/losses.hpp"

#include "lsc/core/error.hpp"

namespace lsc {

Tensor reg_loss(const Tensor& z, const Tensor& z_prime) {
  if (z.shape() != z_prime.shape()) {
    throw DimensionError("regularization loss needs equal latent shapes, got " + shape_string(z.shape()) +
                         " and " + shape_string(z_prime.shape()));
  }
  return mse_mean(z, z_prime);
}

std::vector<Index> as_index(std::span<const NodeId> nodes) { return {nodes.begin(), nodes.end()}; }

Tensor one_hot(std::span<const int> labels, std::span<const NodeId> rows, std::size_t num_classes) {
  std::vector<double> t(rows.size() * num_classes, 0.0);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const int y = labels[rows[i]];
    if (y < 0 || static_cast<std::size_t>(y) >= num_classes) {
      throw ValidationError("node " + std::to_string(rows[i]) + " has no valid label");
    }
    t[i * num_classes + static_cast<std::size_t>(y)] = 1.0;
  }
  return Tensor::from_values({rows.size(), num_classes}, std::move(t));
}

Tensor node_target_loss(const Tensor& logits, std::span<const int> labels, std::span<const NodeId> rows,
                        std::size_t num_classes, TargetLossKind kind) {
  if (rows.empty()) {
    throw ValidationError("target loss over an empty training mask");
  }
  if (logits.rank() != 2 || logits.dim(1) != num_classes) {
    throw DimensionError("logits " + shape_string(logits.shape()) + " do not have " +
                         std::to_string(num_classes) + " columns");
  }
  const auto idx = as_index(rows);
  const Tensor selected = gather_rows(logits, idx);
  if (kind == TargetLossKind::kSoftmax) {
    std::vector<int> y(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      y[i] = labels[rows[i]];
    }
    return softmax_cross_entropy(selected, y);
  }
  return bce_with_logits(selected, one_hot(labels, rows, num_classes));
}

Tensor link_logits(const Tensor& z, std::span<const Edge> pairs) {
  std::vector<Index> u(pairs.size());
  std::vector<Index> v(pairs.size());
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    u[i] = pairs[i].u;
    v[i] = pairs[i].v;
  }
  return rowwise_dot(gather_rows(z, u), gather_rows(z, v));
}

Tensor link_target_loss(const Tensor& z, std::span<const Edge> positives, std::span<const Edge> negatives) {
  if (positives.empty()) {
    throw ValidationError("link loss needs at least one positive pair");
  }
  std::vector<Edge> pairs(positives.begin(), positives.end());
  pairs.insert(pairs.end(), negatives.begin(), negatives.end());
  std::vector<double> targets(pairs.size(), 0.0);
  std::fill(targets.begin(), targets.begin() + static_cast<std::ptrdiff_t>(positives.size()), 1.0);
  return bce_with_logits(link_logits(z, pairs), Tensor::from_values({pairs.size(), 1}, std::move(targets)));
}

Tensor total_loss(const Tensor& target, const Tensor& reg, double lambda) {
  return add(target, scale(reg, lambda));
}

}  // namespace lsc
