#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "premsel/ndt/tape.hpp"

// Differentiable operators. Vectors are rank-1; matrices are rank-2 and
// row-major. Every op throws ShapeMismatch on incompatible inputs.
namespace premsel::ndt {

/// [m,k] x [k,n] -> [m,n]
template <typename T>
Var matmul(Tape<T>& tape, Var a, Var b);

/// Elementwise, identical shapes.
template <typename T>
Var add(Tape<T>& tape, Var a, Var b);
template <typename T>
Var sub(Tape<T>& tape, Var a, Var b);
template <typename T>
Var mul(Tape<T>& tape, Var a, Var b);

/// x [..., n] + bias [n], broadcast over rows.
template <typename T>
Var add_bias(Tape<T>& tape, Var x, Var bias);

template <typename T>
Var relu(Tape<T>& tape, Var x);
template <typename T>
Var sigmoid(Tape<T>& tape, Var x);
template <typename T>
Var tanh(Tape<T>& tape, Var x);

/// Concatenation along the last axis; all inputs share leading dims.
template <typename T>
Var concat(Tape<T>& tape, const std::vector<Var>& parts);

/// Columns [begin, end) of the last axis.
template <typename T>
Var slice_cols(Tape<T>& tape, Var x, std::size_t begin, std::size_t end);

/// Rows [begin, end) of a rank-2 tensor.
template <typename T>
Var slice_rows(Tape<T>& tape, Var x, std::size_t begin, std::size_t end);

/// k rank-1 tensors of length n -> [k, n].
template <typename T>
Var stack_rows(Tape<T>& tape, const std::vector<Var>& rows);

/// table [V, n], indices -> [len, n]. Repeated indices accumulate gradient.
template <typename T>
Var gather_rows(Tape<T>& tape, Var table, std::span<const std::uint32_t> indices);

template <typename T>
Var reshape(Tape<T>& tape, Var x, Shape shape);

/// Sum of all elements -> shape [1].
template <typename T>
Var sum(Tape<T>& tape, Var x);

/// Valid 1-D convolution: input [time, in_ch], kernels [width, in_ch, out_ch]
/// -> [floor((time - width) / stride) + 1, out_ch]. Zero input entries are
/// skipped, so one-hot inputs cost one kernel row per position.
/// Throws SequenceTooShort when time < width.
template <typename T>
Var conv1d(Tape<T>& tape, Var input, Var kernels, std::size_t stride);

/// Per-channel maximum over time positions [begin, end) of input [time, ch]
/// -> [ch]. Gradient routes to the arg-max; ties go to the earliest position.
/// Throws EmptyTime when the range is empty.
template <typename T>
Var global_max_pool(Tape<T>& tape, Var input, std::size_t begin, std::size_t end);
template <typename T>
Var global_max_pool(Tape<T>& tape, Var input);

/// Mean logistic cross-entropy of logits (any shape, n elements) against
/// n labels in {0,1} -> shape [1]. Numerically stable for large |logit|.
template <typename T>
Var bce_with_logits(Tape<T>& tape, Var logits, std::span<const T> labels);

template <typename T>
struct LstmState {
  Var h;  // [1, hidden]
  Var c;  // [1, hidden]
};

/// gates = x Wx + h Wh + b, split as (input, forget, candidate, output).
/// x [1, in]; wx [in, 4H]; wh [H, 4H]; b [4H].
template <typename T>
LstmState<T> lstm_cell(Tape<T>& tape, Var x, LstmState<T> state, Var wx, Var wh, Var b);

/// z, r, n gates; h' = n + z * (h - n), n = tanh(x Wn + bn + r * (h Un)).
/// x [1, in]; wx [in, 3H]; wh [H, 3H]; b [3H]. Returns h' [1, H].
template <typename T>
Var gru_cell(Tape<T>& tape, Var x, Var h, Var wx, Var wh, Var b);

}  // namespace premsel::ndt
