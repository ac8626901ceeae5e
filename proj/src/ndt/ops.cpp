#include "premsel/ndt/ops.hpp"

#include <algorithm>
#include <cmath>

namespace premsel::ndt {

std::string shape_string(const Shape& shape) {
  std::string s = "[";
  for (std::size_t i = 0; i < shape.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(shape[i]);
  }
  return s + "]";
}

namespace {

[[noreturn]] void mismatch(const char* op, const Shape& a, const Shape& b) {
  throw ShapeMismatch(std::string(op) + ": " + shape_string(a) + " vs " + shape_string(b));
}

void require_rank(const char* op, const Shape& s, std::size_t rank) {
  if (s.size() != rank) {
    throw ShapeMismatch(std::string(op) + ": expected rank " + std::to_string(rank) + ", got " + shape_string(s));
  }
}

/// Rows of the leading dims times last-axis length.
std::pair<std::size_t, std::size_t> rows_cols(const Shape& s) {
  if (s.empty()) return {1, 1};
  const std::size_t cols = s.back();
  return {cols ? element_count(s) / cols : 0, cols};
}

template <typename T, typename F, typename D>
Var unary(Tape<T>& tape, Var x, F forward, D derivative) {
  const Tensor<T>& in = tape.value(x);
  Tensor<T> out(in.shape());
  for (std::size_t i = 0; i < in.size(); ++i) out[i] = forward(in[i]);
  const std::size_t xi = x.id;
  return tape.record(std::move(out), {x}, [xi, derivative](Tape<T>& t, std::size_t self) {
    const Tensor<T>& g = t.grad_of(self);
    const Tensor<T>& y = t.value_of(self);
    const Tensor<T>& xv = t.value_of(xi);
    Tensor<T>& gx = t.grad_slot(xi);
    for (std::size_t i = 0; i < g.size(); ++i) gx[i] += g[i] * derivative(xv[i], y[i]);
  });
}

}  // namespace

template <typename T>
Var matmul(Tape<T>& tape, Var a, Var b) {
  const Tensor<T>& A = tape.value(a);
  const Tensor<T>& B = tape.value(b);
  require_rank("matmul", A.shape(), 2);
  require_rank("matmul", B.shape(), 2);
  const std::size_t m = A.dim(0), k = A.dim(1), n = B.dim(1);
  if (B.dim(0) != k) mismatch("matmul", A.shape(), B.shape());
  Tensor<T> out({m, n});
  for (std::size_t i = 0; i < m; ++i) {
    T* row = &out[i * n];
    for (std::size_t p = 0; p < k; ++p) {
      const T av = A[i * k + p];
      if (av == T(0)) continue;
      const T* brow = &B[p * n];
      for (std::size_t j = 0; j < n; ++j) row[j] += av * brow[j];
    }
  }
  const std::size_t ai = a.id, bi = b.id;
  return tape.record(std::move(out), {a, b}, [ai, bi, m, k, n](Tape<T>& t, std::size_t self) {
    const Tensor<T>& G = t.grad_of(self);
    const Tensor<T>& A = t.value_of(ai);
    const Tensor<T>& B = t.value_of(bi);
    if (t.needs_grad(ai)) {
      Tensor<T>& gA = t.grad_slot(ai);
      for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t p = 0; p < k; ++p) {
          T acc = 0;
          for (std::size_t j = 0; j < n; ++j) acc += G[i * n + j] * B[p * n + j];
          gA[i * k + p] += acc;
        }
      }
    }
    if (t.needs_grad(bi)) {
      Tensor<T>& gB = t.grad_slot(bi);
      for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t p = 0; p < k; ++p) {
          const T av = A[i * k + p];
          if (av == T(0)) continue;
          for (std::size_t j = 0; j < n; ++j) gB[p * n + j] += av * G[i * n + j];
        }
      }
    }
  });
}

template <typename T>
Var add(Tape<T>& tape, Var a, Var b) {
  const Tensor<T>& A = tape.value(a);
  const Tensor<T>& B = tape.value(b);
  if (A.shape() != B.shape()) mismatch("add", A.shape(), B.shape());
  Tensor<T> out = A;
  for (std::size_t i = 0; i < out.size(); ++i) out[i] += B[i];
  const std::size_t ai = a.id, bi = b.id;
  return tape.record(std::move(out), {a, b}, [ai, bi](Tape<T>& t, std::size_t self) {
    const Tensor<T>& G = t.grad_of(self);
    for (const std::size_t id : {ai, bi}) {
      if (!t.needs_grad(id)) continue;
      Tensor<T>& g = t.grad_slot(id);
      for (std::size_t i = 0; i < G.size(); ++i) g[i] += G[i];
    }
  });
}

template <typename T>
Var sub(Tape<T>& tape, Var a, Var b) {
  const Tensor<T>& A = tape.value(a);
  const Tensor<T>& B = tape.value(b);
  if (A.shape() != B.shape()) mismatch("sub", A.shape(), B.shape());
  Tensor<T> out = A;
  for (std::size_t i = 0; i < out.size(); ++i) out[i] -= B[i];
  const std::size_t ai = a.id, bi = b.id;
  return tape.record(std::move(out), {a, b}, [ai, bi](Tape<T>& t, std::size_t self) {
    const Tensor<T>& G = t.grad_of(self);
    if (t.needs_grad(ai)) {
      Tensor<T>& g = t.grad_slot(ai);
      for (std::size_t i = 0; i < G.size(); ++i) g[i] += G[i];
    }
    if (t.needs_grad(bi)) {
      Tensor<T>& g = t.grad_slot(bi);
      for (std::size_t i = 0; i < G.size(); ++i) g[i] -= G[i];
    }
  });
}

template <typename T>
Var mul(Tape<T>& tape, Var a, Var b) {
  const Tensor<T>& A = tape.value(a);
  const Tensor<T>& B = tape.value(b);
  if (A.shape() != B.shape()) mismatch("mul", A.shape(), B.shape());
  Tensor<T> out = A;
  for (std::size_t i = 0; i < out.size(); ++i) out[i] *= B[i];
  const std::size_t ai = a.id, bi = b.id;
  return tape.record(std::move(out), {a, b}, [ai, bi](Tape<T>& t, std::size_t self) {
    const Tensor<T>& G = t.grad_of(self);
    const Tensor<T>& A = t.value_of(ai);
    const Tensor<T>& B = t.value_of(bi);
    if (t.needs_grad(ai)) {
      Tensor<T>& g = t.grad_slot(ai);
      for (std::size_t i = 0; i < G.size(); ++i) g[i] += G[i] * B[i];
    }
    if (t.needs_grad(bi)) {
      Tensor<T>& g = t.grad_slot(bi);
      for (std::size_t i = 0; i < G.size(); ++i) g[i] += G[i] * A[i];
    }
  });
}

template <typename T>
Var add_bias(Tape<T>& tape, Var x, Var bias) {
  const Tensor<T>& X = tape.value(x);
  const Tensor<T>& B = tape.value(bias);
  require_rank("add_bias", B.shape(), 1);
  const auto [rows, cols] = rows_cols(X.shape());
  if (X.rank() == 0 || cols != B.dim(0)) mismatch("add_bias", X.shape(), B.shape());
  Tensor<T> out = X;
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) out[r * cols + c] += B[c];
  }
  const std::size_t xi = x.id, bi = bias.id;
  return tape.record(std::move(out), {x, bias}, [xi, bi, rows = rows, cols = cols](Tape<T>& t, std::size_t self) {
    const Tensor<T>& G = t.grad_of(self);
    if (t.needs_grad(xi)) {
      Tensor<T>& g = t.grad_slot(xi);
      for (std::size_t i = 0; i < G.size(); ++i) g[i] += G[i];
    }
    if (t.needs_grad(bi)) {
      Tensor<T>& g = t.grad_slot(bi);
      for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < cols; ++c) g[c] += G[r * cols + c];
      }
    }
  });
}

template <typename T>
Var relu(Tape<T>& tape, Var x) {
  return unary(
      tape, x, [](T v) { return v > T(0) ? v : T(0); }, [](T v, T) { return v > T(0) ? T(1) : T(0); });
}

template <typename T>
Var sigmoid(Tape<T>& tape, Var x) {
  return unary(
      tape, x,
      [](T v) {
        if (v >= T(0)) return T(1) / (T(1) + std::exp(-v));
        const T e = std::exp(v);
        return e / (T(1) + e);
      },
      [](T, T y) { return y * (T(1) - y); });
}

template <typename T>
Var tanh(Tape<T>& tape, Var x) {
  return unary(
      tape, x, [](T v) { return std::tanh(v); }, [](T, T y) { return T(1) - y * y; });
}

template <typename T>
Var concat(Tape<T>& tape, const std::vector<Var>& parts) {
  if (parts.empty()) throw ShapeMismatch("concat: no inputs");
  const Shape& first = tape.value(parts[0]).shape();
  if (first.empty()) throw ShapeMismatch("concat: rank-0 input");
  const auto [rows, c0] = rows_cols(first);
  std::vector<std::size_t> widths;
  std::size_t total = 0;
  for (const Var p : parts) {
    const Shape& s = tape.value(p).shape();
    if (s.size() != first.size() || !std::equal(s.begin(), s.end() - 1, first.begin())) {
      mismatch("concat", first, s);
    }
    widths.push_back(s.back());
    total += s.back();
  }
  Shape out_shape = first;
  out_shape.back() = total;
  Tensor<T> out(out_shape);
  std::size_t offset = 0;
  for (std::size_t k = 0; k < parts.size(); ++k) {
    const Tensor<T>& v = tape.value(parts[k]);
    for (std::size_t r = 0; r < rows; ++r) {
      std::copy_n(&v[r * widths[k]], widths[k], &out[r * total + offset]);
    }
    offset += widths[k];
  }
  std::vector<std::size_t> ids;
  for (const Var p : parts) ids.push_back(p.id);
  return tape.record(std::move(out), parts, [ids, widths, rows = rows, total](Tape<T>& t, std::size_t self) {
    const Tensor<T>& G = t.grad_of(self);
    std::size_t offset = 0;
    for (std::size_t k = 0; k < ids.size(); ++k) {
      if (t.needs_grad(ids[k])) {
        Tensor<T>& g = t.grad_slot(ids[k]);
        for (std::size_t r = 0; r < rows; ++r) {
          for (std::size_t c = 0; c < widths[k]; ++c) g[r * widths[k] + c] += G[r * total + offset + c];
        }
      }
      offset += widths[k];
    }
  });
}

template <typename T>
Var slice_cols(Tape<T>& tape, Var x, std::size_t begin, std::size_t end) {
  const Tensor<T>& X = tape.value(x);
  if (X.rank() == 0) throw ShapeMismatch("slice_cols: rank-0 input");
  const auto [rows, cols] = rows_cols(X.shape());
  if (begin > end || end > cols) throw ShapeMismatch("slice_cols: range out of bounds for " + shape_string(X.shape()));
  const std::size_t w = end - begin;
  Shape s = X.shape();
  s.back() = w;
  Tensor<T> out(s);
  for (std::size_t r = 0; r < rows; ++r) std::copy_n(&X[r * cols + begin], w, &out[r * w]);
  const std::size_t xi = x.id;
  return tape.record(std::move(out), {x}, [xi, rows = rows, cols = cols, begin, w](Tape<T>& t, std::size_t self) {
    const Tensor<T>& G = t.grad_of(self);
    Tensor<T>& g = t.grad_slot(xi);
    for (std::size_t r = 0; r < rows; ++r) {
      for (std::size_t c = 0; c < w; ++c) g[r * cols + begin + c] += G[r * w + c];
    }
  });
}

template <typename T>
Var slice_rows(Tape<T>& tape, Var x, std::size_t begin, std::size_t end) {
  const Tensor<T>& X = tape.value(x);
  require_rank("slice_rows", X.shape(), 2);
  if (begin > end || end > X.dim(0)) throw ShapeMismatch("slice_rows: range out of bounds for " + shape_string(X.shape()));
  const std::size_t cols = X.dim(1);
  Tensor<T> out({end - begin, cols});
  std::copy_n(&X[begin * cols], (end - begin) * cols, out.data().data());
  const std::size_t xi = x.id;
  return tape.record(std::move(out), {x}, [xi, begin, cols](Tape<T>& t, std::size_t self) {
    const Tensor<T>& G = t.grad_of(self);
    Tensor<T>& g = t.grad_slot(xi);
    for (std::size_t i = 0; i < G.size(); ++i) g[begin * cols + i] += G[i];
  });
}

template <typename T>
Var stack_rows(Tape<T>& tape, const std::vector<Var>& rows) {
  if (rows.empty()) throw ShapeMismatch("stack_rows: no inputs");
  const Shape& first = tape.value(rows[0]).shape();
  require_rank("stack_rows", first, 1);
  const std::size_t n = first[0];
  Tensor<T> out({rows.size(), n});
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const Tensor<T>& v = tape.value(rows[r]);
    if (v.shape() != first) mismatch("stack_rows", first, v.shape());
    std::copy_n(v.data().data(), n, &out[r * n]);
  }
  std::vector<std::size_t> ids;
  for (const Var v : rows) ids.push_back(v.id);
  return tape.record(std::move(out), rows, [ids, n](Tape<T>& t, std::size_t self) {
    const Tensor<T>& G = t.grad_of(self);
    for (std::size_t r = 0; r < ids.size(); ++r) {
      if (!t.needs_grad(ids[r])) continue;
      Tensor<T>& g = t.grad_slot(ids[r]);
      for (std::size_t c = 0; c < n; ++c) g[c] += G[r * n + c];
    }
  });
}

template <typename T>
Var gather_rows(Tape<T>& tape, Var table, std::span<const std::uint32_t> indices) {
  const Tensor<T>& W = tape.value(table);
  require_rank("gather_rows", W.shape(), 2);
  const std::size_t vocab = W.dim(0), n = W.dim(1);
  Tensor<T> out({indices.size(), n});
  for (std::size_t r = 0; r < indices.size(); ++r) {
    if (indices[r] >= vocab) throw ShapeMismatch("gather_rows: index " + std::to_string(indices[r]) + " >= " + std::to_string(vocab));
    std::copy_n(&W[indices[r] * n], n, &out[r * n]);
  }
  const std::size_t wi = table.id;
  std::vector<std::uint32_t> idx(indices.begin(), indices.end());
  return tape.record(std::move(out), {table}, [wi, idx = std::move(idx), n](Tape<T>& t, std::size_t self) {
    const Tensor<T>& G = t.grad_of(self);
    Tensor<T>& g = t.grad_slot(wi);
    for (std::size_t r = 0; r < idx.size(); ++r) {
      for (std::size_t c = 0; c < n; ++c) g[idx[r] * n + c] += G[r * n + c];
    }
  });
}

template <typename T>
Var reshape(Tape<T>& tape, Var x, Shape shape) {
  const Tensor<T>& X = tape.value(x);
  if (element_count(shape) != X.size()) mismatch("reshape", X.shape(), shape);
  const std::size_t xi = x.id;
  return tape.record(X.reshaped(std::move(shape)), {x}, [xi](Tape<T>& t, std::size_t self) {
    const Tensor<T>& G = t.grad_of(self);
    Tensor<T>& g = t.grad_slot(xi);
    for (std::size_t i = 0; i < G.size(); ++i) g[i] += G[i];
  });
}

template <typename T>
Var sum(Tape<T>& tape, Var x) {
  const Tensor<T>& X = tape.value(x);
  T acc = 0;
  for (const T v : X.data()) acc += v;
  const std::size_t xi = x.id;
  return tape.record(Tensor<T>({1}, std::vector<T>{acc}), {x}, [xi](Tape<T>& t, std::size_t self) {
    const T g0 = t.grad_of(self)[0];
    Tensor<T>& g = t.grad_slot(xi);
    for (std::size_t i = 0; i < g.size(); ++i) g[i] += g0;
  });
}

template <typename T>
Var conv1d(Tape<T>& tape, Var input, Var kernels, std::size_t stride) {
  const Tensor<T>& X = tape.value(input);
  const Tensor<T>& K = tape.value(kernels);
  require_rank("conv1d input", X.shape(), 2);
  require_rank("conv1d kernels", K.shape(), 3);
  const std::size_t time = X.dim(0), in_ch = X.dim(1);
  const std::size_t width = K.dim(0), out_ch = K.dim(2);
  if (K.dim(1) != in_ch) mismatch("conv1d", X.shape(), K.shape());
  if (stride == 0) throw ShapeMismatch("conv1d: stride must be >= 1");
  if (width == 0) throw ShapeMismatch("conv1d: zero kernel width");
  if (time < width) {
    throw ComputeError("SequenceTooShort", "conv1d: " + std::to_string(time) + " steps < kernel width " +
                                               std::to_string(width));
  }
  const std::size_t out_time = (time - width) / stride + 1;
  Tensor<T> out({out_time, out_ch});
  for (std::size_t o = 0; o < out_time; ++o) {
    T* orow = &out[o * out_ch];
    for (std::size_t w = 0; w < width; ++w) {
      const T* xrow = &X[(o * stride + w) * in_ch];
      for (std::size_t c = 0; c < in_ch; ++c) {
        const T xv = xrow[c];
        if (xv == T(0)) continue;
        const T* krow = &K[(w * in_ch + c) * out_ch];
        for (std::size_t j = 0; j < out_ch; ++j) orow[j] += xv * krow[j];
      }
    }
  }
  const std::size_t xi = input.id, ki = kernels.id;
  return tape.record(std::move(out), {input, kernels},
                     [xi, ki, stride, width, in_ch, out_ch, out_time](Tape<T>& t, std::size_t self) {
                       const Tensor<T>& G = t.grad_of(self);
                       const Tensor<T>& X = t.value_of(xi);
                       const Tensor<T>& K = t.value_of(ki);
                       const bool gx_needed = t.needs_grad(xi);
                       const bool gk_needed = t.needs_grad(ki);
                       Tensor<T>* gX = gx_needed ? &t.grad_slot(xi) : nullptr;
                       Tensor<T>* gK = gk_needed ? &t.grad_slot(ki) : nullptr;
                       for (std::size_t o = 0; o < out_time; ++o) {
                         const T* grow = &G[o * out_ch];
                         for (std::size_t w = 0; w < width; ++w) {
                           const std::size_t xr = (o * stride + w) * in_ch;
                           for (std::size_t c = 0; c < in_ch; ++c) {
                             const std::size_t kr = (w * in_ch + c) * out_ch;
                             if (gK) {
                               const T xv = X[xr + c];
                               if (xv != T(0)) {
                                 for (std::size_t j = 0; j < out_ch; ++j) (*gK)[kr + j] += xv * grow[j];
                               }
                             }
                             if (gX) {
                               T acc = 0;
                               for (std::size_t j = 0; j < out_ch; ++j) acc += K[kr + j] * grow[j];
                               (*gX)[xr + c] += acc;
                             }
                           }
                         }
                       }
                     });
}

template <typename T>
Var global_max_pool(Tape<T>& tape, Var input, std::size_t begin, std::size_t end) {
  const Tensor<T>& X = tape.value(input);
  require_rank("global_max_pool", X.shape(), 2);
  const std::size_t ch = X.dim(1);
  end = std::min(end, X.dim(0));
  if (begin >= end) throw ComputeError("EmptyTime", "global_max_pool: empty time range");
  Tensor<T> out({ch});
  std::vector<std::size_t> argmax(ch, begin);
  for (std::size_t c = 0; c < ch; ++c) out[c] = X[begin * ch + c];
  for (std::size_t r = begin + 1; r < end; ++r) {
    for (std::size_t c = 0; c < ch; ++c) {
      if (X[r * ch + c] > out[c]) {
        out[c] = X[r * ch + c];
        argmax[c] = r;
      }
    }
  }
  const std::size_t xi = input.id;
  return tape.record(std::move(out), {input}, [xi, argmax = std::move(argmax), ch](Tape<T>& t, std::size_t self) {
    const Tensor<T>& G = t.grad_of(self);
    Tensor<T>& g = t.grad_slot(xi);
    for (std::size_t c = 0; c < ch; ++c) g[argmax[c] * ch + c] += G[c];
  });
}

template <typename T>
Var global_max_pool(Tape<T>& tape, Var input) {
  const Tensor<T>& X = tape.value(input);
  require_rank("global_max_pool", X.shape(), 2);
  return global_max_pool(tape, input, 0, X.dim(0));
}

template <typename T>
Var bce_with_logits(Tape<T>& tape, Var logits, std::span<const T> labels) {
  const Tensor<T>& Z = tape.value(logits);
  if (Z.size() != labels.size() || labels.empty()) {
    throw ShapeMismatch("bce_with_logits: " + std::to_string(Z.size()) + " logits vs " +
                        std::to_string(labels.size()) + " labels");
  }
  T acc = 0;
  for (std::size_t i = 0; i < Z.size(); ++i) {
    const T z = Z[i];
    // max(z,0) - z*y + log(1 + exp(-|z|))
    acc += std::max(z, T(0)) - z * labels[i] + std::log1p(std::exp(-std::abs(z)));
  }
  const T n = static_cast<T>(Z.size());
  const std::size_t zi = logits.id;
  std::vector<T> y(labels.begin(), labels.end());
  return tape.record(Tensor<T>({1}, std::vector<T>{acc / n}), {logits}, [zi, y = std::move(y), n](Tape<T>& t, std::size_t self) {
    const T g0 = t.grad_of(self)[0];
    const Tensor<T>& Z = t.value_of(zi);
    Tensor<T>& g = t.grad_slot(zi);
    for (std::size_t i = 0; i < Z.size(); ++i) {
      const T z = Z[i];
      const T p = z >= T(0) ? T(1) / (T(1) + std::exp(-z)) : std::exp(z) / (T(1) + std::exp(z));
      g[i] += g0 * (p - y[i]) / n;
    }
  });
}

template <typename T>
LstmState<T> lstm_cell(Tape<T>& tape, Var x, LstmState<T> state, Var wx, Var wh, Var b) {
  const Shape& hs = tape.value(state.h).shape();
  require_rank("lstm_cell h", hs, 2);
  const std::size_t H = hs[1];
  if (tape.value(wx).shape().size() != 2 || tape.value(wx).dim(1) != 4 * H) {
    mismatch("lstm_cell wx", tape.value(wx).shape(), {0, 4 * H});
  }
  if (tape.value(state.c).shape() != hs) mismatch("lstm_cell c", tape.value(state.c).shape(), hs);
  Var gates = add_bias(tape, add(tape, matmul(tape, x, wx), matmul(tape, state.h, wh)), b);
  Var i = sigmoid(tape, slice_cols(tape, gates, 0, H));
  Var f = sigmoid(tape, slice_cols(tape, gates, H, 2 * H));
  Var g = tanh(tape, slice_cols(tape, gates, 2 * H, 3 * H));
  Var o = sigmoid(tape, slice_cols(tape, gates, 3 * H, 4 * H));
  Var c = add(tape, mul(tape, f, state.c), mul(tape, i, g));
  Var h = mul(tape, o, tanh(tape, c));
  return {h, c};
}

template <typename T>
Var gru_cell(Tape<T>& tape, Var x, Var h, Var wx, Var wh, Var b) {
  const Shape& hs = tape.value(h).shape();
  require_rank("gru_cell h", hs, 2);
  const std::size_t H = hs[1];
  if (tape.value(wx).shape().size() != 2 || tape.value(wx).dim(1) != 3 * H) {
    mismatch("gru_cell wx", tape.value(wx).shape(), {0, 3 * H});
  }
  Var xg = add_bias(tape, matmul(tape, x, wx), b);
  Var hg = matmul(tape, h, wh);
  Var z = sigmoid(tape, add(tape, slice_cols(tape, xg, 0, H), slice_cols(tape, hg, 0, H)));
  Var r = sigmoid(tape, add(tape, slice_cols(tape, xg, H, 2 * H), slice_cols(tape, hg, H, 2 * H)));
  Var n = tanh(tape, add(tape, slice_cols(tape, xg, 2 * H, 3 * H), mul(tape, r, slice_cols(tape, hg, 2 * H, 3 * H))));
  return add(tape, n, mul(tape, z, sub(tape, h, n)));
}

#define PREMSEL_NDT_INSTANTIATE(T)                                                                \
  template Var matmul<T>(Tape<T>&, Var, Var);                                                     \
  template Var add<T>(Tape<T>&, Var, Var);                                                        \
  template Var sub<T>(Tape<T>&, Var, Var);                                                        \
  template Var mul<T>(Tape<T>&, Var, Var);                                                        \
  template Var add_bias<T>(Tape<T>&, Var, Var);                                                   \
  template Var relu<T>(Tape<T>&, Var);                                                            \
  template Var sigmoid<T>(Tape<T>&, Var);                                                         \
  template Var tanh<T>(Tape<T>&, Var);                                                            \
  template Var concat<T>(Tape<T>&, const std::vector<Var>&);                                      \
  template Var slice_cols<T>(Tape<T>&, Var, std::size_t, std::size_t);                            \
  template Var slice_rows<T>(Tape<T>&, Var, std::size_t, std::size_t);                            \
  template Var stack_rows<T>(Tape<T>&, const std::vector<Var>&);                                  \
  template Var gather_rows<T>(Tape<T>&, Var, std::span<const std::uint32_t>);                     \
  template Var reshape<T>(Tape<T>&, Var, Shape);                                                  \
  template Var sum<T>(Tape<T>&, Var);                                                             \
  template Var conv1d<T>(Tape<T>&, Var, Var, std::size_t);                                        \
  template Var global_max_pool<T>(Tape<T>&, Var, std::size_t, std::size_t);                       \
  template Var global_max_pool<T>(Tape<T>&, Var);                                                 \
  template Var bce_with_logits<T>(Tape<T>&, Var, std::span<const T>);                             \
  template LstmState<T> lstm_cell<T>(Tape<T>&, Var, LstmState<T>, Var, Var, Var);                 \
  template Var gru_cell<T>(Tape<T>&, Var, Var, Var, Var, Var);

PREMSEL_NDT_INSTANTIATE(float)
PREMSEL_NDT_INSTANTIATE(double)

#undef PREMSEL_NDT_INSTANTIATE

}  // namespace premsel::ndt
