#pragma once

#include <cstdint>

#include "premsel/ndt/params.hpp"

namespace premsel::ndt {

struct AdamConfig {
  double learning_rate = 1e-4;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
  /// Shadow update: shadow <- decay * shadow + (1 - decay) * param.
  double polyak_decay = 0.9999;
};

/// Bias-corrected Adam with Polyak-averaged shadow weights. The moments and
/// shadows always mirror the parameter shapes.
template <typename T>
class Adam {
public:
  Adam(const ParamStore<T>& params, AdamConfig config);

  /// One update of `params` from `grads`. Parameters without a gradient entry
  /// are left untouched (their shadows still decay toward them).
  /// Throws ShapeMismatch when a gradient does not match its parameter.
  void step(ParamStore<T>& params, const ParamStore<T>& grads);

  std::uint64_t steps() const { return t_; }
  const AdamConfig& config() const { return config_; }
  const ParamStore<T>& shadows() const { return shadow_; }
  const ParamStore<T>& first_moments() const { return m_; }
  const ParamStore<T>& second_moments() const { return v_; }

private:
  AdamConfig config_;
  std::uint64_t t_ = 0;
  ParamStore<T> m_;
  ParamStore<T> v_;
  ParamStore<T> shadow_;
};

/// Uniform in +-sqrt(6 / (fan_in + fan_out)). Rank-2 shapes are [in, out];
/// rank-3 conv kernels [width, in, out] use fan = width * channels.
template <typename T>
Tensor<T> glorot_uniform(const Shape& shape, std::uint64_t seed);

double glorot_limit(const Shape& shape);

}  // namespace premsel::ndt
