#include "lsc/tensor/tensor.hpp"

#include <algorithm>
#include <sstream>
#include <unordered_set>

#include "lsc/core/error.hpp"

namespace lsc {
namespace {

thread_local bool g_recording = true;

}  // namespace

std::size_t shape_numel(const Shape& shape) noexcept {
  std::size_t n = 1;
  for (const auto d : shape) {
    n *= d;
  }
  return n;
}

std::string shape_string(const Shape& shape) {
  std::ostringstream out;
  out << '[';
  for (std::size_t i = 0; i < shape.size(); ++i) {
    out << (i ? "x" : "") << shape[i];
  }
  out << ']';
  return out.str();
}

std::vector<double>& detail::Node::grad_buffer() {
  if (!has_grad) {
    grad.assign(values.size(), 0.0);
    has_grad = true;
  }
  return grad;
}

Tensor Tensor::zeros(Shape shape, bool requires_grad) { return full(std::move(shape), 0.0, requires_grad); }

Tensor Tensor::full(Shape shape, double value, bool requires_grad) {
  std::vector<double> values(shape_numel(shape), value);
  return from_values(std::move(shape), std::move(values), requires_grad);
}

Tensor Tensor::from_values(Shape shape, std::vector<double> values, bool requires_grad) {
  if (values.size() != shape_numel(shape)) {
    throw DimensionError("tensor of shape " + shape_string(shape) + " cannot hold " +
                         std::to_string(values.size()) + " values");
  }
  auto node = std::make_shared<detail::Node>();
  node->shape = std::move(shape);
  node->values = std::move(values);
  node->requires_grad = requires_grad;
  return Tensor(std::move(node));
}

Tensor Tensor::scalar(double value, bool requires_grad) { return from_values({}, {value}, requires_grad); }

detail::Node& Tensor::node() const {
  if (!node_) {
    throw ContractError("use of an undefined tensor");
  }
  return *node_;
}

const Shape& Tensor::shape() const { return node().shape; }

std::size_t Tensor::dim(std::size_t axis) const {
  const auto& s = shape();
  if (axis >= s.size()) {
    throw DimensionError("axis " + std::to_string(axis) + " out of range for shape " + shape_string(s));
  }
  return s[axis];
}

std::size_t Tensor::numel() const { return node().values.size(); }

std::size_t Tensor::rows() const {
  const auto& s = shape();
  return s.empty() ? 1 : s[0];
}

std::size_t Tensor::cols() const {
  const auto& s = shape();
  if (s.size() > 2) {
    throw DimensionError("expected a matrix, got shape " + shape_string(s));
  }
  return s.size() == 2 ? s[1] : 1;
}

std::span<const double> Tensor::values() const { return node().values; }
std::span<double> Tensor::mutable_values() { return node().values; }

double Tensor::item() const {
  if (numel() != 1) {
    throw DimensionError("item() on tensor of shape " + shape_string(shape()));
  }
  return node().values[0];
}

double Tensor::at(std::size_t row, std::size_t col) const {
  const std::size_t c = cols();
  if (row >= rows() || col >= c) {
    throw IndexError("index (" + std::to_string(row) + "," + std::to_string(col) +
                     ") out of range for shape " + shape_string(shape()));
  }
  return node().values[row * c + col];
}

bool Tensor::requires_grad() const { return node().requires_grad; }

Tensor& Tensor::set_requires_grad(bool flag) {
  if (!is_leaf()) {
    throw ContractError("requires_grad can only be changed on leaf tensors");
  }
  node().requires_grad = flag;
  if (!flag) {
    clear_grad();
  }
  return *this;
}

bool Tensor::is_leaf() const { return node().is_leaf(); }

bool Tensor::has_grad() const { return node().has_grad; }

std::span<const double> Tensor::grad() const {
  if (!node().has_grad) {
    throw ContractError("tensor " + shape_string(shape()) + " has no gradient");
  }
  return node().grad;
}

void Tensor::zero_grad() {
  auto& n = node();
  if (n.has_grad) {
    std::fill(n.grad.begin(), n.grad.end(), 0.0);
  }
}

void Tensor::clear_grad() {
  auto& n = node();
  n.grad.clear();
  n.grad.shrink_to_fit();
  n.has_grad = false;
}

Tensor Tensor::detach() const { return from_values(shape(), node().values, false); }

Tensor Tensor::clone() const { return from_values(shape(), node().values, requires_grad()); }

Tensor Tensor::make_result(Shape shape, std::vector<double> values, std::vector<Tensor> inputs,
                           detail::BackwardFn backward) {
  Tensor out = from_values(std::move(shape), std::move(values), false);
  if (!g_recording) {
    return out;
  }
  const bool any = std::any_of(inputs.begin(), inputs.end(),
                               [](const Tensor& t) { return t.requires_grad(); });
  if (!any) {
    return out;
  }
  auto& node = out.node();
  node.requires_grad = true;
  node.inputs.reserve(inputs.size());
  for (auto& t : inputs) {
    node.inputs.push_back(t.node_ptr());
  }
  node.backward = std::move(backward);
  return out;
}

void backward(const Tensor& loss) {
  auto& root = loss.node();
  if (root.values.size() != 1) {
    throw ContractError("backward() needs a scalar loss, got shape " + shape_string(root.shape));
  }
  if (!root.requires_grad) {
    throw ContractError("backward() on a loss that does not depend on any parameter");
  }

  // Iterative post-order DFS: `order` lists every node after all its inputs.
  std::vector<detail::Node*> order;
  std::unordered_set<const detail::Node*> visited;
  std::vector<std::pair<detail::Node*, std::size_t>> stack;
  stack.emplace_back(&root, 0);
  visited.insert(&root);
  while (!stack.empty()) {
    auto& [node, next_input] = stack.back();
    if (next_input < node->inputs.size()) {
      detail::Node* child = node->inputs[next_input++].get();
      if (child->requires_grad && visited.insert(child).second) {
        stack.emplace_back(child, 0);
      }
      continue;
    }
    order.push_back(node);
    stack.pop_back();
  }

  for (auto* node : order) {
    if (!node->is_leaf()) {
      node->grad.assign(node->values.size(), 0.0);
      node->has_grad = true;
    }
  }
  root.grad_buffer()[0] += 1.0;

  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    if (!(*it)->is_leaf()) {
      (*it)->backward(**it);
    }
  }
}

bool grad_recording_enabled() noexcept { return g_recording; }

NoGradGuard::NoGradGuard() : previous_(g_recording) { g_recording = false; }
NoGradGuard::~NoGradGuard() { g_recording = previous_; }

}  // namespace lsc
