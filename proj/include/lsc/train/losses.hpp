#pragma once

#include <span>
#include <vector>

#include "lsc/graph/edge_set.hpp"
#include "lsc/train/config.hpp"
#include "lsc/tensor/ops.hpp"

namespace lsc {

// Mean squared distance between two latent matrices of identical shape.
Tensor reg_loss(const Tensor& z, const Tensor& z_prime);

// One-hot [n x C] targets for the given rows of `labels`.
Tensor one_hot(std::span<const int> labels, std::span<const NodeId> rows, std::size_t num_classes);

// Node classification loss over `rows` of `logits` ([N x C]): one-vs-rest BCE
// averaged over rows and classes, or softmax cross-entropy.
Tensor node_target_loss(const Tensor& logits, std::span<const int> labels, std::span<const NodeId> rows,
                        std::size_t num_classes, TargetLossKind kind = TargetLossKind::kBce);

// Inner-product decoder: z[u] . z[v] for each pair, as [E x 1].
Tensor link_logits(const Tensor& z, std::span<const Edge> pairs);

// BCE on inner-product logits of positives (target 1) and negatives (target 0).
Tensor link_target_loss(const Tensor& z, std::span<const Edge> positives, std::span<const Edge> negatives);

// target + lambda * reg.
Tensor total_loss(const Tensor& target, const Tensor& reg, double lambda);

std::vector<Index> as_index(std::span<const NodeId> nodes);

}  // namespace lsc
