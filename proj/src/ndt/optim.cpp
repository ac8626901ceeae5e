#include "premsel/ndt/optim.hpp"

#include <cmath>
#include <cstring>

#include "premsel/rng.hpp"

namespace premsel::ndt {

template <typename T>
std::uint64_t params_checksum(const ParamStore<T>& params) {
  std::uint64_t h = fnv1a(std::string_view("params"));
  for (const auto& [name, t] : params) {
    h = fnv1a(name, h);
    h = fnv1a(shape_string(t.shape()), h);
    h = fnv1a(std::as_bytes(t.data()), h);
  }
  return h;
}

template <typename T>
Adam<T>::Adam(const ParamStore<T>& params, AdamConfig config) : config_(config) {
  for (const auto& [name, p] : params) {
    m_.emplace(name, Tensor<T>(p.shape()));
    v_.emplace(name, Tensor<T>(p.shape()));
    shadow_.emplace(name, p);
  }
}

template <typename T>
void Adam<T>::step(ParamStore<T>& params, const ParamStore<T>& grads) {
  ++t_;
  const double b1 = config_.beta1, b2 = config_.beta2;
  const double c1 = 1.0 - std::pow(b1, static_cast<double>(t_));
  const double c2 = 1.0 - std::pow(b2, static_cast<double>(t_));
  const double lr = config_.learning_rate;
  for (auto& [name, p] : params) {
    const auto g = grads.find(name);
    if (g != grads.end()) {
      if (g->second.shape() != p.shape()) {
        throw ShapeMismatch("adam: gradient " + shape_string(g->second.shape()) + " for parameter '" + name +
                            "' " + shape_string(p.shape()));
      }
      Tensor<T>& m = m_.at(name);
      Tensor<T>& v = v_.at(name);
      for (std::size_t i = 0; i < p.size(); ++i) {
        const double gi = g->second[i];
        const double mi = b1 * m[i] + (1.0 - b1) * gi;
        const double vi = b2 * v[i] + (1.0 - b2) * gi * gi;
        m[i] = static_cast<T>(mi);
        v[i] = static_cast<T>(vi);
        p[i] = static_cast<T>(p[i] - lr * (mi / c1) / (std::sqrt(vi / c2) + config_.epsilon));
      }
    }
    Tensor<T>& s = shadow_.at(name);
    const double d = config_.polyak_decay;
    for (std::size_t i = 0; i < p.size(); ++i) s[i] = static_cast<T>(d * s[i] + (1.0 - d) * p[i]);
  }
}

double glorot_limit(const Shape& shape) {
  double fan_in = 1, fan_out = 1;
  if (shape.size() == 2) {
    fan_in = static_cast<double>(shape[0]);
    fan_out = static_cast<double>(shape[1]);
  } else if (shape.size() == 3) {
    fan_in = static_cast<double>(shape[0] * shape[1]);
    fan_out = static_cast<double>(shape[0] * shape[2]);
  } else if (shape.size() == 1) {
    fan_in = fan_out = static_cast<double>(shape[0]);
  }
  return std::sqrt(6.0 / (fan_in + fan_out));
}

template <typename T>
Tensor<T> glorot_uniform(const Shape& shape, std::uint64_t seed) {
  Rng rng(seed);
  const double limit = glorot_limit(shape);
  Tensor<T> out(shape);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = static_cast<T>(rng.uniform(-limit, limit));
  return out;
}

template class Adam<float>;
template class Adam<double>;
template std::uint64_t params_checksum<float>(const ParamStore<float>&);
template std::uint64_t params_checksum<double>(const ParamStore<double>&);
template Tensor<float> glorot_uniform<float>(const Shape&, std::uint64_t);
template Tensor<double> glorot_uniform<double>(const Shape&, std::uint64_t);

}  // namespace premsel::ndt
