#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace lsc {

using Shape = std::vector<std::size_t>;

std::size_t shape_numel(const Shape& shape) noexcept;
std::string shape_string(const Shape& shape);

class Tensor;

namespace detail {

struct Node;

// Propagates the output gradient (node.grad) into the node's inputs.
using BackwardFn = std::function<void(Node& node)>;

struct Node {
  Shape shape;
  std::vector<double> values;
  std::vector<double> grad;  // empty while absent
  bool has_grad = false;
  bool requires_grad = false;
  std::vector<std::shared_ptr<Node>> inputs;
  BackwardFn backward;

  bool is_leaf() const noexcept { return !backward; }
  // Allocates a zero gradient on first use.
  std::vector<double>& grad_buffer();
};

}  // namespace detail

// Dense row-major float64 array and a vertex of the reverse-mode graph.
//
// A Tensor is a cheap handle: copies share the same storage. Operations on
// tensors that require gradients record their inputs and a backward rule;
// backward() replays those rules in reverse topological order.
class Tensor {
 public:
  Tensor() = default;

  static Tensor zeros(Shape shape, bool requires_grad = false);
  static Tensor full(Shape shape, double value, bool requires_grad = false);
  static Tensor from_values(Shape shape, std::vector<double> values, bool requires_grad = false);
  static Tensor scalar(double value, bool requires_grad = false);

  bool defined() const noexcept { return node_ != nullptr; }
  const Shape& shape() const;
  std::size_t rank() const { return shape().size(); }
  std::size_t dim(std::size_t axis) const;
  std::size_t numel() const;
  // Matrix view helpers: a rank-1 tensor is treated as a column.
  std::size_t rows() const;
  std::size_t cols() const;

  std::span<const double> values() const;
  std::span<double> mutable_values();
  double item() const;
  double at(std::size_t row, std::size_t col) const;

  bool requires_grad() const;
  // Leaves only.
  Tensor& set_requires_grad(bool flag);
  bool is_leaf() const;

  bool has_grad() const;
  // Throws ContractError when no gradient has been accumulated.
  std::span<const double> grad() const;
  void zero_grad();
  void clear_grad();

  // New leaf sharing nothing with this tensor's graph; values are copied.
  Tensor detach() const;
  // Deep copy of values into a fresh leaf with the same requires_grad flag.
  Tensor clone() const;

  detail::Node& node() const;
  const std::shared_ptr<detail::Node>& node_ptr() const noexcept { return node_; }

  // Result of a differentiable operation. When gradient recording is off or
  // no input requires gradients, the result is a plain leaf.
  static Tensor make_result(Shape shape, std::vector<double> values,
                            std::vector<Tensor> inputs, detail::BackwardFn backward);

 private:
  explicit Tensor(std::shared_ptr<detail::Node> node) : node_(std::move(node)) {}

  std::shared_ptr<detail::Node> node_;
};

// Reverse pass from a scalar loss. Gradients of requires_grad leaves
// accumulate across calls until zero_grad()/clear_grad(); intermediate
// gradients are recomputed on every call.
void backward(const Tensor& loss);

bool grad_recording_enabled() noexcept;

// Disables graph recording on this thread for its lifetime (evaluation passes).
class NoGradGuard {
 public:
  NoGradGuard();
  ~NoGradGuard();
  NoGradGuard(const NoGradGuard&) = delete;
  NoGradGuard& operator=(const NoGradGuard&) = delete;

 private:
  bool previous_;
};

}  // namespace lsc
