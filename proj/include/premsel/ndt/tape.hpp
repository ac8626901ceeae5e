#pragma once

#include <cstddef>
#include <functional>
#include <limits>
#include <vector>

#include "premsel/ndt/tensor.hpp"

namespace premsel::ndt {

/// Handle to a node on a Tape.
struct Var {
  std::size_t id = std::numeric_limits<std::size_t>::max();
};

/// Reverse-mode gradient tape. Nodes are appended in evaluation order, so the
/// node list is already a topological order of the DAG; backward walks it
/// once in reverse. Single-threaded.
template <typename T>
class Tape {
public:
  using BackwardFn = std::function<void(Tape&, std::size_t self)>;

  Var constant(Tensor<T> value) { return push(std::move(value), false, nullptr); }
  Var parameter(Tensor<T> value) { return push(std::move(value), true, nullptr); }

  const Tensor<T>& value(Var v) const { return nodes_.at(v.id).value; }
  bool requires_grad(Var v) const { return nodes_.at(v.id).requires_grad; }
  std::size_t size() const { return nodes_.size(); }

  /// Gradient accumulated into v by the last backward(); zeros if untouched.
  Tensor<T> grad(Var v) const {
    const Node& n = nodes_.at(v.id);
    return n.grad.empty() ? Tensor<T>(n.value.shape()) : n.grad;
  }

  /// Seeds d(root)/d(root) = 1 elementwise and propagates to every
  /// grad-requiring ancestor.
  void backward(Var root) {
    for (Node& n : nodes_) n.grad = Tensor<T>();
    Node& r = nodes_.at(root.id);
    r.grad = Tensor<T>(r.value.shape(), T(1));
    for (std::size_t i = root.id + 1; i-- > 0;) {
      Node& n = nodes_[i];
      if (n.backward && !n.grad.empty()) n.backward(*this, i);
    }
  }

  /// Appends an op result. `backward` is dropped when no input needs grad.
  Var record(Tensor<T> value, std::initializer_list<Var> inputs, BackwardFn backward) {
    bool needs = false;
    for (const Var in : inputs) needs = needs || nodes_.at(in.id).requires_grad;
    return push(std::move(value), needs, needs ? std::move(backward) : nullptr);
  }
  Var record(Tensor<T> value, const std::vector<Var>& inputs, BackwardFn backward) {
    bool needs = false;
    for (const Var in : inputs) needs = needs || nodes_.at(in.id).requires_grad;
    return push(std::move(value), needs, needs ? std::move(backward) : nullptr);
  }

  /// Gradient slot of node `id`, allocated on first use.
  Tensor<T>& grad_slot(std::size_t id) {
    Node& n = nodes_[id];
    if (n.grad.empty()) n.grad = Tensor<T>(n.value.shape());
    return n.grad;
  }
  const Tensor<T>& grad_of(std::size_t id) const { return nodes_[id].grad; }
  const Tensor<T>& value_of(std::size_t id) const { return nodes_[id].value; }
  bool needs_grad(std::size_t id) const { return nodes_[id].requires_grad; }

private:
  struct Node {
    Tensor<T> value;
    Tensor<T> grad;
    bool requires_grad = false;
    BackwardFn backward;
  };

  Var push(Tensor<T> value, bool requires_grad, BackwardFn backward) {
    nodes_.push_back({std::move(value), Tensor<T>(), requires_grad, std::move(backward)});
    return Var{nodes_.size() - 1};
  }

  std::vector<Node> nodes_;
};

}  // namespace premsel::ndt
