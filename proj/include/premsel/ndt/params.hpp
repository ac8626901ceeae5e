#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "premsel/ndt/tape.hpp"

namespace premsel::ndt {

/// Named parameter tensors, iterated in name order.
template <typename T>
using ParamStore = std::map<std::string, Tensor<T>>;

template <typename U, typename T>
ParamStore<U> cast_params(const ParamStore<T>& params) {
  ParamStore<U> out;
  for (const auto& [name, t] : params) out.emplace(name, t.template cast<U>());
  return out;
}

/// Checksum over names, shapes and raw values.
template <typename T>
std::uint64_t params_checksum(const ParamStore<T>& params);

/// Lazily places parameters on a tape, once per name.
template <typename T>
class Binder {
public:
  Binder(Tape<T>& tape, const ParamStore<T>& params, bool trainable)
      : tape_(tape), params_(params), trainable_(trainable) {}

  Var operator()(const std::string& name) {
    const auto it = bound_.find(name);
    if (it != bound_.end()) return it->second;
    const auto p = params_.find(name);
    if (p == params_.end()) throw ShapeMismatch("unknown parameter '" + name + "'");
    const Var v = trainable_ ? tape_.parameter(p->second) : tape_.constant(p->second);
    bound_.emplace(name, v);
    return v;
  }

  Tape<T>& tape() { return tape_; }

  /// Gradients of every bound parameter after tape.backward().
  ParamStore<T> gradients() const {
    ParamStore<T> out;
    for (const auto& [name, v] : bound_) out.emplace(name, tape_.grad(v));
    return out;
  }

private:
  Tape<T>& tape_;
  const ParamStore<T>& params_;
  bool trainable_;
  std::map<std::string, Var> bound_;
};

}  // namespace premsel::ndt
