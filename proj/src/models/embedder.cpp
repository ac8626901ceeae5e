#include "premsel/models/embedder.hpp"

#include <algorithm>

#include "premsel/error.hpp"
#include "premsel/ndt/ops.hpp"
#include "premsel/ndt/optim.hpp"
#include "premsel/rng.hpp"

namespace premsel::models {

namespace {

std::size_t conv_out_channels(const EmbedderConfig& e, std::size_t layer) {
  const bool last = layer + 1 == e.conv_layers;
  return last && !has_rnn(e.kind) ? e.embedding_dim : e.channels;
}

std::size_t rnn_input_dim(const ModelConfig& c) {
  return has_conv(c.embedder.kind) ? c.embedder.channels : c.input_dim;
}

std::size_t gate_count(const EmbedderConfig& e) { return e.rnn_cell == RnnCell::Lstm ? 4 : 3; }

/// Conv stack with ReLU after every layer.
template <typename T>
Var conv_stack(Binder<T>& bind, const ModelConfig& c, const std::string& prefix, Var x) {
  ndt::Tape<T>& tape = bind.tape();
  const EmbedderConfig& e = c.embedder;
  for (std::size_t l = 0; l < e.conv_layers; ++l) {
    const std::string layer = prefix + "conv" + std::to_string(l) + "/";
    x = ndt::conv1d(tape, x, bind(layer + "kernel"), l == 0 ? 1 : e.stride);
    x = ndt::relu(tape, ndt::add_bias(tape, x, bind(layer + "bias")));
  }
  return x;
}

/// Final hidden state after consuming rows [begin, end) of x.
template <typename T>
Var run_rnn(Binder<T>& bind, const ModelConfig& c, const std::string& prefix, Var x, std::size_t begin,
            std::size_t end) {
  ndt::Tape<T>& tape = bind.tape();
  const std::size_t hidden = c.embedder.embedding_dim;
  const Var wx = bind(prefix + "rnn/wx");
  const Var wh = bind(prefix + "rnn/wh");
  const Var b = bind(prefix + "rnn/b");
  Var h = tape.constant(Tensor<T>({1, hidden}));
  if (c.embedder.rnn_cell == RnnCell::Lstm) {
    ndt::LstmState<T> state{h, tape.constant(Tensor<T>({1, hidden}))};
    for (std::size_t t = begin; t < end; ++t) state = ndt::lstm_cell(tape, ndt::slice_rows(tape, x, t, t + 1), state, wx, wh, b);
    h = state.h;
  } else {
    for (std::size_t t = begin; t < end; ++t) h = ndt::gru_cell(tape, ndt::slice_rows(tape, x, t, t + 1), h, wx, wh, b);
  }
  return ndt::reshape(tape, h, {hidden});
}

}  // namespace

const char* side_prefix(Side side) { return side == Side::Conjecture ? "conj/" : "axiom/"; }

std::vector<std::pair<std::string, Shape>> parameter_shapes(const ModelConfig& c) {
  validate(c);
  const EmbedderConfig& e = c.embedder;
  std::vector<std::pair<std::string, Shape>> out;
  for (const Side side : {Side::Conjecture, Side::Axiom}) {
    const std::string p = side_prefix(side);
    if (has_conv(e.kind)) {
      std::size_t in = c.input_dim;
      for (std::size_t l = 0; l < e.conv_layers; ++l) {
        const std::size_t o = conv_out_channels(e, l);
        const std::string layer = p + "conv" + std::to_string(l) + "/";
        out.emplace_back(layer + "kernel", Shape{e.kernel_width, in, o});
        out.emplace_back(layer + "bias", Shape{o});
        in = o;
      }
    }
    if (has_rnn(e.kind)) {
      const std::size_t g = gate_count(e) * e.embedding_dim;
      out.emplace_back(p + "rnn/wx", Shape{rnn_input_dim(c), g});
      out.emplace_back(p + "rnn/wh", Shape{e.embedding_dim, g});
      out.emplace_back(p + "rnn/b", Shape{g});
    }
  }
  out.emplace_back("cls/w1", Shape{2 * e.embedding_dim, c.classifier_hidden});
  out.emplace_back("cls/b1", Shape{c.classifier_hidden});
  out.emplace_back("cls/w2", Shape{c.classifier_hidden, 1});
  out.emplace_back("cls/b2", Shape{1});
  std::sort(out.begin(), out.end());
  return out;
}

template <typename T>
ParamStore<T> init_params(const ModelConfig& c, std::uint64_t seed) {
  ParamStore<T> params;
  for (const auto& [name, shape] : parameter_shapes(c)) {
    if (shape.size() == 1) {
      params.emplace(name, Tensor<T>(shape));
    } else {
      params.emplace(name, ndt::glorot_uniform<T>(shape, derive_seed(seed, name)));
    }
  }
  return params;
}

template <typename T>
Var embed_batch(Binder<T>& bind, const ModelConfig& c, Side side, std::span<const Tensor<T>* const> inputs) {
  ndt::Tape<T>& tape = bind.tape();
  const EmbedderConfig& e = c.embedder;
  const std::string prefix = side_prefix(side);
  if (inputs.empty()) throw ShapeMismatch("embed_batch: no sequences");
  for (const Tensor<T>* in : inputs) {
    if (in->rank() != 2 || in->dim(1) != c.input_dim || in->dim(0) == 0) {
      throw ShapeMismatch("embed_batch: sequence of shape " + ndt::shape_string(in->shape()) + ", expected [steps, " +
                          std::to_string(c.input_dim) + "]");
    }
  }

  std::vector<Var> rows;
  if (!has_conv(e.kind)) {
    for (const Tensor<T>* in : inputs) {
      const Var x = tape.constant(*in);
      rows.push_back(run_rnn(bind, c, prefix, x, 0, in->dim(0)));
    }
    return ndt::stack_rows(tape, rows);
  }

  // Pack: each segment is left-padded to the receptive field and rounded up
  // to the total stride, so every segment starts on an output boundary.
  const std::size_t field = receptive_field(e);
  const std::size_t jump = total_stride(e);
  std::vector<std::size_t> offsets, lengths;
  std::size_t total = 0;
  for (const Tensor<T>* in : inputs) {
    const std::size_t padded = std::max(in->dim(0), field);
    offsets.push_back(total);
    lengths.push_back(padded);
    total += (padded + jump - 1) / jump * jump;
  }
  Tensor<T> packed({total, c.input_dim});
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    const Tensor<T>& in = *inputs[i];
    const std::size_t start = offsets[i] + (lengths[i] - in.dim(0));
    std::copy(in.data().begin(), in.data().end(), packed.data().begin() + static_cast<std::ptrdiff_t>(start * c.input_dim));
  }
  const Var h = conv_stack(bind, c, prefix, tape.constant(std::move(packed)));
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    const std::size_t begin = offsets[i] / jump;
    const std::size_t end = begin + conv_output_steps(e, lengths[i]);
    rows.push_back(has_rnn(e.kind) ? run_rnn(bind, c, prefix, h, begin, end)
                                   : ndt::global_max_pool(tape, h, begin, end));
  }
  return ndt::stack_rows(tape, rows);
}

template <typename T>
Var embed_sequence(Binder<T>& bind, const ModelConfig& c, Side side, const Tensor<T>& input) {
  const Tensor<T>* one[] = {&input};
  const Var rows = embed_batch<T>(bind, c, side, one);
  return ndt::reshape(bind.tape(), rows, {c.embedder.embedding_dim});
}

template <typename T>
Var classify(Binder<T>& bind, const ModelConfig&, Var conj, Var axiom) {
  ndt::Tape<T>& tape = bind.tape();
  Var x = ndt::concat(tape, {conj, axiom});
  x = ndt::relu(tape, ndt::add_bias(tape, ndt::matmul(tape, x, bind("cls/w1")), bind("cls/b1")));
  return ndt::add_bias(tape, ndt::matmul(tape, x, bind("cls/w2")), bind("cls/b2"));
}

#define PREMSEL_INSTANTIATE(T)                                                                                   \
  template ParamStore<T> init_params<T>(const ModelConfig&, std::uint64_t);                                      \
  template Var embed_batch<T>(Binder<T>&, const ModelConfig&, Side, std::span<const Tensor<T>* const>);          \
  template Var embed_sequence<T>(Binder<T>&, const ModelConfig&, Side, const Tensor<T>&);                        \
  template Var classify<T>(Binder<T>&, const ModelConfig&, Var, Var);

PREMSEL_INSTANTIATE(float)
PREMSEL_INSTANTIATE(double)

#undef PREMSEL_INSTANTIATE

}  // namespace premsel::models
