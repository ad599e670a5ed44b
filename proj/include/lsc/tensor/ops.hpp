#pragma once

#include <cstdint>
#include <span>

#include "lsc/tensor/tensor.hpp"

namespace lsc {

using Index = std::uint32_t;

// [m x k] . [k x n]. Zero entries of the left operand are skipped, so a
// sparse constant feature matrix costs O(nnz * n).
Tensor matmul(const Tensor& a, const Tensor& b);

// Elementwise, identical shapes.
Tensor add(const Tensor& a, const Tensor& b);
Tensor sub(const Tensor& a, const Tensor& b);
Tensor mul(const Tensor& a, const Tensor& b);
Tensor scale(const Tensor& x, double factor);

// x[n x c] + row[c] for every row.
Tensor add_row_broadcast(const Tensor& x, const Tensor& row);

// max(x, slope*x); the derivative at 0 takes the negative-slope branch.
Tensor leaky_relu(const Tensor& x, double slope);
Tensor elu(const Tensor& x, double alpha = 1.0);
Tensor sigmoid(const Tensor& x);

Tensor sum(const Tensor& x);

// Same values, new shape with equal element count.
Tensor reshape(const Tensor& x, Shape shape);
Tensor transpose(const Tensor& x);
// Column `col` of a matrix as an [n x 1] tensor.
Tensor select_column(const Tensor& x, std::size_t col);

// out[e] = x[index[e]]
Tensor gather_rows(const Tensor& x, std::span<const Index> index);
// out[d] = sum of rows[e] with dest[e] == d, accumulated in ascending e.
Tensor scatter_sum(const Tensor& rows, std::span<const Index> dest, std::size_t num_out);
// out[e] = weights[e] * x[e]; weights is [E] or [E x 1].
Tensor scale_rows(const Tensor& x, const Tensor& weights);
// out[e] = <a[e], b[e]> as an [E x 1] tensor.
Tensor rowwise_dot(const Tensor& a, const Tensor& b);
// Vertical stacking of matrices with equal column counts.
Tensor concat_rows(std::span<const Tensor> parts);

// Softmax of each segment of `scores` ([E] or [E x 1]), shifted by the
// segment maximum.
Tensor segment_softmax(const Tensor& scores, std::span<const Index> segment, std::size_t num_segments);

// mean(softplus(x) - t*x) over all elements. Targets must be 0 or 1.
Tensor bce_with_logits(const Tensor& logits, const Tensor& targets);
// Mean negative log-likelihood of `labels` under row-wise softmax.
Tensor softmax_cross_entropy(const Tensor& logits, std::span<const int> labels);
// (1/numel) * sum (a-b)^2
Tensor mse_mean(const Tensor& a, const Tensor& b);

}  // namespace lsc
