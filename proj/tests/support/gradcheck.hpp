#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>

#include "premsel/ndt/ops.hpp"
#include "premsel/ndt/params.hpp"
#include "premsel/rng.hpp"

namespace premsel::testing {

using ndt::Binder;
using ndt::ParamStore;
using ndt::Shape;
using ndt::Tape;
using ndt::Tensor;
using ndt::Var;

/// Builds a scalar loss from bound parameters.
using LossBuilder = std::function<Var(Binder<double>&)>;

inline Tensor<double> random_tensor(Rng& rng, const Shape& shape, double scale = 1.0) {
  Tensor<double> t(shape);
  for (double& x : t.data()) x = rng.uniform(-scale, scale);
  return t;
}

/// Reduces any tensor to a scalar with fixed random weights, so every output
/// element contributes a distinct gradient.
inline Var random_projection(Tape<double>& tape, Var x, std::uint64_t seed) {
  Rng rng(seed);
  const Var w = tape.constant(random_tensor(rng, tape.value(x).shape()));
  return ndt::sum(tape, ndt::mul(tape, x, w));
}

inline double loss_value(const ParamStore<double>& params, const LossBuilder& build) {
  Tape<double> tape;
  Binder<double> bind(tape, params, false);
  return tape.value(build(bind))[0];
}

/// Worst per-tensor relative error ||analytic - numeric|| / max(||a||, ||n||)
/// over all parameters, with central differences of step `h`.
inline double max_gradient_error(const ParamStore<double>& params, const LossBuilder& build, double h = 1e-6,
                                 std::string* worst = nullptr) {
  Tape<double> tape;
  Binder<double> bind(tape, params, true);
  tape.backward(build(bind));
  const ParamStore<double> analytic = bind.gradients();

  ParamStore<double> probe = params;
  double max_err = 0.0;
  for (auto& [name, tensor] : probe) {
    const auto a = analytic.find(name);
    double diff2 = 0.0;
    double a2 = 0.0;
    double n2 = 0.0;
    for (std::size_t i = 0; i < tensor.size(); ++i) {
      const double saved = tensor[i];
      tensor[i] = saved + h;
      const double up = loss_value(probe, build);
      tensor[i] = saved - h;
      const double down = loss_value(probe, build);
      tensor[i] = saved;
      const double numeric = (up - down) / (2 * h);
      const double an = a == analytic.end() ? 0.0 : a->second[i];
      diff2 += (an - numeric) * (an - numeric);
      a2 += an * an;
      n2 += numeric * numeric;
    }
    const double denom = std::max({std::sqrt(a2), std::sqrt(n2), 1e-10});
    const double err = std::sqrt(diff2) / denom;
    if (err > max_err) {
      max_err = err;
      if (worst) *worst = name;
    }
  }
  return max_err;
}

}  // namespace premsel::testing
