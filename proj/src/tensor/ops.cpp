#include "lsc/tensor/ops.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "lsc/core/error.hpp"
#include "lsc/simd/kernels.hpp"

namespace lsc {
namespace {

using detail::Node;

void require_same_shape(const char* op, const Tensor& a, const Tensor& b) {
  if (a.shape() != b.shape()) {
    throw DimensionError(std::string(op) + ": shape mismatch " + shape_string(a.shape()) + " vs " +
                         shape_string(b.shape()));
  }
}

void require_matrix(const char* op, const Tensor& x) {
  if (x.rank() != 2) {
    throw DimensionError(std::string(op) + ": expected a matrix, got " + shape_string(x.shape()));
  }
}

// Number of rows of a [E] or [E x 1] tensor; throws otherwise.
std::size_t column_length(const char* op, const Tensor& x) {
  const auto& s = x.shape();
  if (s.size() == 1 || (s.size() == 2 && s[1] == 1)) {
    return s[0];
  }
  throw DimensionError(std::string(op) + ": expected [E] or [E x 1], got " + shape_string(s));
}

Node& input(Node& node, std::size_t i) { return *node.inputs[i]; }

// Elementwise unary op with derivative computed from (x, y).
template <typename Forward, typename Derivative>
Tensor unary(const Tensor& x, Forward forward, Derivative derivative) {
  const auto in = x.values();
  std::vector<double> out(in.size());
  for (std::size_t i = 0; i < in.size(); ++i) {
    out[i] = forward(in[i]);
  }
  return Tensor::make_result(x.shape(), std::move(out), {x}, [derivative](Node& node) {
    Node& a = input(node, 0);
    auto& g = a.grad_buffer();
    for (std::size_t i = 0; i < g.size(); ++i) {
      g[i] += node.grad[i] * derivative(a.values[i], node.values[i]);
    }
  });
}

}  // namespace

Tensor matmul(const Tensor& a, const Tensor& b) {
  require_matrix("matmul", a);
  require_matrix("matmul", b);
  const std::size_t m = a.dim(0);
  const std::size_t k = a.dim(1);
  const std::size_t n = b.dim(1);
  if (b.dim(0) != k) {
    throw DimensionError("matmul: inner dimensions disagree, " + shape_string(a.shape()) + " x " +
                         shape_string(b.shape()));
  }
  const auto& kern = simd::active();
  const auto av = a.values();
  const auto bv = b.values();
  std::vector<double> out(m * n, 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    double* crow = out.data() + i * n;
    const double* arow = av.data() + i * k;
    for (std::size_t p = 0; p < k; ++p) {
      if (arow[p] != 0.0) {
        kern.axpy(n, arow[p], bv.data() + p * n, crow);
      }
    }
  }
  return Tensor::make_result({m, n}, std::move(out), {a, b}, [m, k, n](Node& node) {
    const auto& kern = simd::active();
    Node& a = input(node, 0);
    Node& b = input(node, 1);
    const double* dc = node.grad.data();
    if (a.requires_grad) {
      auto& da = a.grad_buffer();
      for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t p = 0; p < k; ++p) {
          da[i * k + p] += kern.dot(n, dc + i * n, b.values.data() + p * n);
        }
      }
    }
    if (b.requires_grad) {
      auto& db = b.grad_buffer();
      for (std::size_t i = 0; i < m; ++i) {
        const double* arow = a.values.data() + i * k;
        for (std::size_t p = 0; p < k; ++p) {
          if (arow[p] != 0.0) {
            kern.axpy(n, arow[p], dc + i * n, db.data() + p * n);
          }
        }
      }
    }
  });
}

Tensor add(const Tensor& a, const Tensor& b) {
  require_same_shape("add", a, b);
  std::vector<double> out(a.numel());
  simd::active().add(out.size(), a.values().data(), b.values().data(), out.data());
  return Tensor::make_result(a.shape(), std::move(out), {a, b}, [](Node& node) {
    const auto& kern = simd::active();
    for (std::size_t i = 0; i < 2; ++i) {
      Node& in = input(node, i);
      if (in.requires_grad) {
        auto& g = in.grad_buffer();
        kern.add(g.size(), g.data(), node.grad.data(), g.data());
      }
    }
  });
}

Tensor sub(const Tensor& a, const Tensor& b) {
  require_same_shape("sub", a, b);
  const auto av = a.values();
  const auto bv = b.values();
  std::vector<double> out(av.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = av[i] - bv[i];
  }
  return Tensor::make_result(a.shape(), std::move(out), {a, b}, [](Node& node) {
    const auto& kern = simd::active();
    Node& a = input(node, 0);
    Node& b = input(node, 1);
    if (a.requires_grad) {
      auto& g = a.grad_buffer();
      kern.add(g.size(), g.data(), node.grad.data(), g.data());
    }
    if (b.requires_grad) {
      kern.axpy(node.grad.size(), -1.0, node.grad.data(), b.grad_buffer().data());
    }
  });
}

Tensor mul(const Tensor& a, const Tensor& b) {
  require_same_shape("mul", a, b);
  std::vector<double> out(a.numel());
  simd::active().mul(out.size(), a.values().data(), b.values().data(), out.data());
  return Tensor::make_result(a.shape(), std::move(out), {a, b}, [](Node& node) {
    Node& a = input(node, 0);
    Node& b = input(node, 1);
    if (a.requires_grad) {
      auto& g = a.grad_buffer();
      for (std::size_t i = 0; i < g.size(); ++i) {
        g[i] += node.grad[i] * b.values[i];
      }
    }
    if (b.requires_grad) {
      auto& g = b.grad_buffer();
      for (std::size_t i = 0; i < g.size(); ++i) {
        g[i] += node.grad[i] * a.values[i];
      }
    }
  });
}

Tensor scale(const Tensor& x, double factor) {
  std::vector<double> out(x.numel());
  simd::active().scale(out.size(), factor, x.values().data(), out.data());
  return Tensor::make_result(x.shape(), std::move(out), {x}, [factor](Node& node) {
    Node& a = input(node, 0);
    simd::active().axpy(node.grad.size(), factor, node.grad.data(), a.grad_buffer().data());
  });
}

Tensor add_row_broadcast(const Tensor& x, const Tensor& row) {
  require_matrix("add_row_broadcast", x);
  const std::size_t n = x.dim(0);
  const std::size_t c = x.dim(1);
  if (row.numel() != c || row.rank() > 2 || (row.rank() == 2 && row.dim(0) != 1)) {
    throw DimensionError("add_row_broadcast: row of shape " + shape_string(row.shape()) +
                         " does not match " + shape_string(x.shape()));
  }
  const auto& kern = simd::active();
  std::vector<double> out(x.values().begin(), x.values().end());
  for (std::size_t i = 0; i < n; ++i) {
    kern.add(c, out.data() + i * c, row.values().data(), out.data() + i * c);
  }
  return Tensor::make_result(x.shape(), std::move(out), {x, row}, [n, c](Node& node) {
    const auto& kern = simd::active();
    Node& x = input(node, 0);
    Node& r = input(node, 1);
    if (x.requires_grad) {
      auto& g = x.grad_buffer();
      kern.add(g.size(), g.data(), node.grad.data(), g.data());
    }
    if (r.requires_grad) {
      auto& g = r.grad_buffer();
      for (std::size_t i = 0; i < n; ++i) {
        kern.add(c, g.data(), node.grad.data() + i * c, g.data());
      }
    }
  });
}

Tensor leaky_relu(const Tensor& x, double slope) {
  if (!(slope >= 0.0)) {
    throw ValidationError("leaky_relu: slope must be non-negative");
  }
  return unary(
      x, [slope](double v) { return v > 0.0 ? v : slope * v; },
      [slope](double v, double) { return v > 0.0 ? 1.0 : slope; });
}

Tensor elu(const Tensor& x, double alpha) {
  return unary(
      x, [alpha](double v) { return v > 0.0 ? v : alpha * std::expm1(v); },
      [alpha](double v, double y) { return v > 0.0 ? 1.0 : y + alpha; });
}

Tensor sigmoid(const Tensor& x) {
  return unary(
      x,
      [](double v) {
        if (v >= 0.0) {
          return 1.0 / (1.0 + std::exp(-v));
        }
        const double e = std::exp(v);
        return e / (1.0 + e);
      },
      [](double, double y) { return y * (1.0 - y); });
}

Tensor sum(const Tensor& x) {
  double total = 0.0;
  for (const double v : x.values()) {
    total += v;
  }
  return Tensor::make_result({}, {total}, {x}, [](Node& node) {
    Node& a = input(node, 0);
    const double g = node.grad[0];
    for (auto& v : a.grad_buffer()) {
      v += g;
    }
  });
}

Tensor reshape(const Tensor& x, Shape shape) {
  if (shape_numel(shape) != x.numel()) {
    throw DimensionError("reshape: cannot view " + shape_string(x.shape()) + " as " + shape_string(shape));
  }
  std::vector<double> out(x.values().begin(), x.values().end());
  return Tensor::make_result(std::move(shape), std::move(out), {x}, [](Node& node) {
    Node& a = input(node, 0);
    auto& g = a.grad_buffer();
    simd::active().add(g.size(), g.data(), node.grad.data(), g.data());
  });
}

Tensor transpose(const Tensor& x) {
  require_matrix("transpose", x);
  const std::size_t r = x.dim(0);
  const std::size_t c = x.dim(1);
  const auto in = x.values();
  std::vector<double> out(in.size());
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < c; ++j) {
      out[j * r + i] = in[i * c + j];
    }
  }
  return Tensor::make_result({c, r}, std::move(out), {x}, [r, c](Node& node) {
    auto& g = input(node, 0).grad_buffer();
    for (std::size_t i = 0; i < r; ++i) {
      for (std::size_t j = 0; j < c; ++j) {
        g[i * c + j] += node.grad[j * r + i];
      }
    }
  });
}

Tensor select_column(const Tensor& x, std::size_t col) {
  require_matrix("select_column", x);
  const std::size_t r = x.dim(0);
  const std::size_t c = x.dim(1);
  if (col >= c) {
    throw IndexError("select_column: column " + std::to_string(col) + " out of range for " +
                     shape_string(x.shape()));
  }
  const auto in = x.values();
  std::vector<double> out(r);
  for (std::size_t i = 0; i < r; ++i) {
    out[i] = in[i * c + col];
  }
  return Tensor::make_result({r, 1}, std::move(out), {x}, [r, c, col](Node& node) {
    auto& g = input(node, 0).grad_buffer();
    for (std::size_t i = 0; i < r; ++i) {
      g[i * c + col] += node.grad[i];
    }
  });
}

Tensor gather_rows(const Tensor& x, std::span<const Index> index) {
  require_matrix("gather_rows", x);
  const std::size_t n = x.dim(0);
  const std::size_t c = x.dim(1);
  const auto in = x.values();
  std::vector<double> out(index.size() * c);
  for (std::size_t e = 0; e < index.size(); ++e) {
    if (index[e] >= n) {
      throw IndexError("gather_rows: row " + std::to_string(index[e]) + " out of range for " +
                       shape_string(x.shape()));
    }
    std::copy_n(in.data() + static_cast<std::size_t>(index[e]) * c, c, out.data() + e * c);
  }
  std::vector<Index> idx(index.begin(), index.end());
  return Tensor::make_result({index.size(), c}, std::move(out), {x},
                             [idx = std::move(idx), c](Node& node) {
                               const auto& kern = simd::active();
                               auto& g = input(node, 0).grad_buffer();
                               for (std::size_t e = 0; e < idx.size(); ++e) {
                                 double* dst = g.data() + static_cast<std::size_t>(idx[e]) * c;
                                 kern.add(c, dst, node.grad.data() + e * c, dst);
                               }
                             });
}

Tensor scatter_sum(const Tensor& rows, std::span<const Index> dest, std::size_t num_out) {
  require_matrix("scatter_sum", rows);
  const std::size_t e_count = rows.dim(0);
  const std::size_t c = rows.dim(1);
  if (dest.size() != e_count) {
    throw DimensionError("scatter_sum: " + std::to_string(dest.size()) + " destinations for " +
                         std::to_string(e_count) + " rows");
  }
  const auto& kern = simd::active();
  const auto in = rows.values();
  std::vector<double> out(num_out * c, 0.0);
  for (std::size_t e = 0; e < e_count; ++e) {
    if (dest[e] >= num_out) {
      throw IndexError("scatter_sum: destination " + std::to_string(dest[e]) + " >= " +
                       std::to_string(num_out));
    }
    double* d = out.data() + static_cast<std::size_t>(dest[e]) * c;
    kern.add(c, d, in.data() + e * c, d);
  }
  std::vector<Index> idx(dest.begin(), dest.end());
  return Tensor::make_result({num_out, c}, std::move(out), {rows},
                             [idx = std::move(idx), c](Node& node) {
                               const auto& kern = simd::active();
                               auto& g = input(node, 0).grad_buffer();
                               for (std::size_t e = 0; e < idx.size(); ++e) {
                                 double* d = g.data() + e * c;
                                 kern.add(c, d, node.grad.data() + static_cast<std::size_t>(idx[e]) * c, d);
                               }
                             });
}

Tensor scale_rows(const Tensor& x, const Tensor& weights) {
  require_matrix("scale_rows", x);
  const std::size_t e_count = x.dim(0);
  const std::size_t c = x.dim(1);
  if (column_length("scale_rows", weights) != e_count) {
    throw DimensionError("scale_rows: weights " + shape_string(weights.shape()) + " for rows of " +
                         shape_string(x.shape()));
  }
  const auto& kern = simd::active();
  const auto xv = x.values();
  const auto wv = weights.values();
  std::vector<double> out(xv.size());
  for (std::size_t e = 0; e < e_count; ++e) {
    kern.scale(c, wv[e], xv.data() + e * c, out.data() + e * c);
  }
  return Tensor::make_result(x.shape(), std::move(out), {x, weights}, [e_count, c](Node& node) {
    const auto& kern = simd::active();
    Node& x = input(node, 0);
    Node& w = input(node, 1);
    if (x.requires_grad) {
      auto& g = x.grad_buffer();
      for (std::size_t e = 0; e < e_count; ++e) {
        kern.axpy(c, w.values[e], node.grad.data() + e * c, g.data() + e * c);
      }
    }
    if (w.requires_grad) {
      auto& g = w.grad_buffer();
      for (std::size_t e = 0; e < e_count; ++e) {
        g[e] += kern.dot(c, node.grad.data() + e * c, x.values.data() + e * c);
      }
    }
  });
}

Tensor rowwise_dot(const Tensor& a, const Tensor& b) {
  require_matrix("rowwise_dot", a);
  require_same_shape("rowwise_dot", a, b);
  const std::size_t e_count = a.dim(0);
  const std::size_t c = a.dim(1);
  const auto& kern = simd::active();
  std::vector<double> out(e_count);
  for (std::size_t e = 0; e < e_count; ++e) {
    out[e] = kern.dot(c, a.values().data() + e * c, b.values().data() + e * c);
  }
  return Tensor::make_result({e_count, 1}, std::move(out), {a, b}, [e_count, c](Node& node) {
    const auto& kern = simd::active();
    Node& a = input(node, 0);
    Node& b = input(node, 1);
    if (a.requires_grad) {
      auto& g = a.grad_buffer();
      for (std::size_t e = 0; e < e_count; ++e) {
        kern.axpy(c, node.grad[e], b.values.data() + e * c, g.data() + e * c);
      }
    }
    if (b.requires_grad) {
      auto& g = b.grad_buffer();
      for (std::size_t e = 0; e < e_count; ++e) {
        kern.axpy(c, node.grad[e], a.values.data() + e * c, g.data() + e * c);
      }
    }
  });
}

Tensor concat_rows(std::span<const Tensor> parts) {
  if (parts.empty()) {
    throw ValidationError("concat_rows: no inputs");
  }
  std::size_t total_rows = 0;
  const std::size_t c = parts.front().cols();
  for (const auto& p : parts) {
    require_matrix("concat_rows", p);
    if (p.dim(1) != c) {
      throw DimensionError("concat_rows: column mismatch " + shape_string(parts.front().shape()) +
                           " vs " + shape_string(p.shape()));
    }
    total_rows += p.dim(0);
  }
  std::vector<double> out;
  out.reserve(total_rows * c);
  std::vector<std::size_t> offsets;
  for (const auto& p : parts) {
    offsets.push_back(out.size());
    out.insert(out.end(), p.values().begin(), p.values().end());
  }
  return Tensor::make_result({total_rows, c}, std::move(out), {parts.begin(), parts.end()},
                             [offsets = std::move(offsets)](Node& node) {
                               const auto& kern = simd::active();
                               for (std::size_t i = 0; i < node.inputs.size(); ++i) {
                                 Node& in = input(node, i);
                                 if (in.requires_grad) {
                                   auto& g = in.grad_buffer();
                                   kern.add(g.size(), g.data(), node.grad.data() + offsets[i], g.data());
                                 }
                               }
                             });
}

Tensor segment_softmax(const Tensor& scores, std::span<const Index> segment, std::size_t num_segments) {
  const std::size_t e_count = column_length("segment_softmax", scores);
  if (segment.size() != e_count) {
    throw DimensionError("segment_softmax: " + std::to_string(segment.size()) + " segment ids for " +
                         std::to_string(e_count) + " scores");
  }
  const auto sv = scores.values();
  std::vector<double> seg_max(num_segments, -std::numeric_limits<double>::infinity());
  for (std::size_t e = 0; e < e_count; ++e) {
    if (segment[e] >= num_segments) {
      throw IndexError("segment_softmax: segment " + std::to_string(segment[e]) + " >= " +
                       std::to_string(num_segments));
    }
    seg_max[segment[e]] = std::max(seg_max[segment[e]], sv[e]);
  }
  std::vector<double> out(e_count);
  std::vector<double> seg_sum(num_segments, 0.0);
  for (std::size_t e = 0; e < e_count; ++e) {
    out[e] = std::exp(sv[e] - seg_max[segment[e]]);
    seg_sum[segment[e]] += out[e];
  }
  for (std::size_t e = 0; e < e_count; ++e) {
    out[e] /= seg_sum[segment[e]];
  }
  std::vector<Index> idx(segment.begin(), segment.end());
  return Tensor::make_result(scores.shape(), std::move(out), {scores},
                             [idx = std::move(idx), num_segments](Node& node) {
                               // dx_e = y_e * (dy_e - sum_{f in seg(e)} y_f dy_f)
                               std::vector<double> weighted(num_segments, 0.0);
                               for (std::size_t e = 0; e < idx.size(); ++e) {
                                 weighted[idx[e]] += node.values[e] * node.grad[e];
                               }
                               auto& g = input(node, 0).grad_buffer();
                               for (std::size_t e = 0; e < idx.size(); ++e) {
                                 g[e] += node.values[e] * (node.grad[e] - weighted[idx[e]]);
                               }
                             });
}

Tensor bce_with_logits(const Tensor& logits, const Tensor& targets) {
  require_same_shape("bce_with_logits", logits, targets);
  const auto x = logits.values();
  const auto t = targets.values();
  if (x.empty()) {
    throw ValidationError("bce_with_logits: empty input");
  }
  double total = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (t[i] != 0.0 && t[i] != 1.0) {
      throw ValidationError("bce_with_logits: target " + std::to_string(t[i]) + " at " +
                            std::to_string(i) + " is not binary");
    }
    // softplus(x) - t*x = max(x,0) - t*x + log1p(exp(-|x|))
    total += std::max(x[i], 0.0) - t[i] * x[i] + std::log1p(std::exp(-std::abs(x[i])));
  }
  const double n = static_cast<double>(x.size());
  return Tensor::make_result({}, {total / n}, {logits, targets}, [n](Node& node) {
    Node& l = input(node, 0);
    Node& t = input(node, 1);
    const double g = node.grad[0] / n;
    if (l.requires_grad) {
      auto& gl = l.grad_buffer();
      for (std::size_t i = 0; i < gl.size(); ++i) {
        const double v = l.values[i];
        const double s = v >= 0.0 ? 1.0 / (1.0 + std::exp(-v)) : std::exp(v) / (1.0 + std::exp(v));
        gl[i] += g * (s - t.values[i]);
      }
    }
    if (t.requires_grad) {
      auto& gt = t.grad_buffer();
      for (std::size_t i = 0; i < gt.size(); ++i) {
        gt[i] -= g * l.values[i];
      }
    }
  });
}

Tensor softmax_cross_entropy(const Tensor& logits, std::span<const int> labels) {
  require_matrix("softmax_cross_entropy", logits);
  const std::size_t n = logits.dim(0);
  const std::size_t c = logits.dim(1);
  if (labels.size() != n) {
    throw DimensionError("softmax_cross_entropy: " + std::to_string(labels.size()) + " labels for " +
                         std::to_string(n) + " rows");
  }
  if (n == 0) {
    throw ValidationError("softmax_cross_entropy: empty input");
  }
  const auto x = logits.values();
  std::vector<double> probs(n * c);
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (labels[i] < 0 || static_cast<std::size_t>(labels[i]) >= c) {
      throw IndexError("softmax_cross_entropy: label " + std::to_string(labels[i]) + " out of range");
    }
    const double* row = x.data() + i * c;
    const double mx = *std::max_element(row, row + c);
    double z = 0.0;
    for (std::size_t j = 0; j < c; ++j) {
      probs[i * c + j] = std::exp(row[j] - mx);
      z += probs[i * c + j];
    }
    for (std::size_t j = 0; j < c; ++j) {
      probs[i * c + j] /= z;
    }
    total += -(row[labels[i]] - mx - std::log(z));
  }
  std::vector<int> lab(labels.begin(), labels.end());
  return Tensor::make_result({}, {total / static_cast<double>(n)}, {logits},
                             [probs = std::move(probs), lab = std::move(lab), n, c](Node& node) {
                               auto& g = input(node, 0).grad_buffer();
                               const double scale_factor = node.grad[0] / static_cast<double>(n);
                               for (std::size_t i = 0; i < n; ++i) {
                                 for (std::size_t j = 0; j < c; ++j) {
                                   const double indicator = static_cast<int>(j) == lab[i] ? 1.0 : 0.0;
                                   g[i * c + j] += scale_factor * (probs[i * c + j] - indicator);
                                 }
                               }
                             });
}

Tensor mse_mean(const Tensor& a, const Tensor& b) {
  require_same_shape("mse_mean", a, b);
  if (a.numel() == 0) {
    throw ValidationError("mse_mean: empty input");
  }
  const double n = static_cast<double>(a.numel());
  const double value = simd::active().squared_distance(a.numel(), a.values().data(), b.values().data()) / n;
  return Tensor::make_result({}, {value}, {a, b}, [n](Node& node) {
    Node& a = input(node, 0);
    Node& b = input(node, 1);
    const double g = 2.0 * node.grad[0] / n;
    if (a.requires_grad) {
      auto& ga = a.grad_buffer();
      for (std::size_t i = 0; i < ga.size(); ++i) {
        ga[i] += g * (a.values[i] - b.values[i]);
      }
    }
    if (b.requires_grad) {
      auto& gb = b.grad_buffer();
      for (std::size_t i = 0; i < gb.size(); ++i) {
        gb[i] -= g * (a.values[i] - b.values[i]);
      }
    }
  });
}

}  // namespace lsc
