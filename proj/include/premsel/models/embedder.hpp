#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "premsel/models/config.hpp"
#include "premsel/ndt/params.hpp"

namespace premsel::models {

using ndt::Binder;
using ndt::ParamStore;
using ndt::Shape;
using ndt::Tensor;
using ndt::Var;

/// The two embedders share an architecture but not weights.
enum class Side { Conjecture, Axiom };

/// "conj/" or "axiom/".
const char* side_prefix(Side side);

/// Every trainable tensor of the pair model, in name order.
std::vector<std::pair<std::string, Shape>> parameter_shapes(const ModelConfig& config);

/// Glorot-uniform weights, zero biases (the rank-1 tensors); each tensor seeded from (seed, name).
template <typename T>
ParamStore<T> init_params(const ModelConfig& config, std::uint64_t seed);

/// Embeds sequences of shape [steps, input_dim] into rows of the result
/// [n, embedding_dim]. Convolutional kinds pack all sequences into one
/// stride-aligned buffer and pool each segment over its own windows only, so
/// a row never depends on its neighbours. Sequences shorter than the
/// receptive field are left-padded with zero rows.
template <typename T>
Var embed_batch(Binder<T>& bind, const ModelConfig& config, Side side, std::span<const Tensor<T>* const> inputs);

/// Single sequence -> [embedding_dim].
template <typename T>
Var embed_sequence(Binder<T>& bind, const ModelConfig& config, Side side, const Tensor<T>& input);

/// Pair classifier: relu([conj, axiom] W1 + b1) W2 + b2.
/// conj and axiom are [n, embedding_dim]; returns logits [n, 1].
template <typename T>
Var classify(Binder<T>& bind, const ModelConfig& config, Var conj, Var axiom);

}  // namespace premsel::models
