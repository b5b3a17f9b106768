#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace dines {

using Shape = std::vector<std::size_t>;

std::size_t shape_size(const Shape& shape);
std::string shape_string(const Shape& shape);

/// Dense row-major float64 tensor with reverse-mode autodiff.
///
/// A Tensor is a cheap handle; copies share storage. Results of operations
/// record their inputs so that `backward()` on a scalar propagates gradients
/// to every leaf created with `requires_grad`. Gradients accumulate across
/// calls; callers reset them with `zero_grad()` between optimizer steps.
class Tensor {
 public:
  struct Node;
  using BackwardFn = std::function<void(Node&)>;

  Tensor() = default;

  static Tensor zeros(Shape shape, bool requires_grad = false);
  static Tensor from_values(Shape shape, std::vector<double> values, bool requires_grad = false);
  static Tensor scalar(double value, bool requires_grad = false);
  static Tensor vector(std::vector<double> values, bool requires_grad = false);
  static Tensor matrix(std::size_t rows, std::size_t cols, std::vector<double> values,
                       bool requires_grad = false);

  bool defined() const noexcept { return static_cast<bool>(node_); }

  const Shape& shape() const;
  std::size_t rank() const { return shape().size(); }
  std::size_t size() const;
  std::size_t rows() const;
  std::size_t cols() const;

  std::span<const double> values() const;
  /// Writable storage; only meant for leaves (parameters, inputs).
  std::span<double> mutable_values();
  double item() const;
  double at(std::size_t i) const;
  double at(std::size_t r, std::size_t c) const;

  bool requires_grad() const;
  bool has_grad() const;
  std::span<const double> grad() const;
  /// Gradient storage, allocated (zero-filled) on first access.
  std::span<double> mutable_grad();
  void zero_grad();

  /// Back-propagates from this scalar. Seeds d(this)/d(this) = 1.
  void backward() const;

  /// Copy of the values without history.
  Tensor detach() const;

  const char* op_name() const;
  Node* node() const noexcept { return node_.get(); }

 private:
  explicit Tensor(std::shared_ptr<Node> node) : node_(std::move(node)) {}

  std::shared_ptr<Node> node_;

  friend Tensor make_result(const char*, Shape, std::vector<double>, std::vector<Tensor>,
                            BackwardFn);
};

struct Tensor::Node {
  Shape shape;
  std::vector<double> value;
  std::vector<double> grad;
  bool requires_grad = false;
  const char* op = "leaf";
  std::vector<std::shared_ptr<Node>> parents;
  BackwardFn backward;

  /// Gradient buffer, allocated zero-filled on first use.
  std::vector<double>& grad_buffer();
  bool parent_needs_grad(std::size_t i) const { return parents[i]->requires_grad; }
  std::vector<double>& parent_grad(std::size_t i) { return parents[i]->grad_buffer(); }
  const std::vector<double>& parent_value(std::size_t i) const { return parents[i]->value; }
};

/// Builds an operation result. Checks every value is finite (throws
/// NumericError naming `op` otherwise) and attaches `backward` only when some
/// parent requires a gradient.
Tensor make_result(const char* op, Shape shape, std::vector<double> values,
                   std::vector<Tensor> parents, Tensor::BackwardFn backward);

}  // namespace dines
