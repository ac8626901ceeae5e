#include "premsel/models/word_vocab.hpp"

#include <cmath>

#include "premsel/error.hpp"
#include "premsel/rng.hpp"

namespace premsel::models {

std::vector<float> pseudo_random_vector(std::string_view token, std::size_t dim, std::uint64_t seed) {
  Rng rng(derive_seed(seed, "word:" + std::string(token)));
  std::vector<double> v(dim);
  double norm = 0.0;
  for (double& x : v) {
    x = rng.normal();
    norm += x * x;
  }
  norm = std::sqrt(norm);
  std::vector<float> out(dim);
  for (std::size_t i = 0; i < dim; ++i) out[i] = static_cast<float>(norm > 0 ? v[i] / norm : 0.0);
  return out;
}

void WordVocab::define(const std::string& symbol, std::vector<float> vector) {
  if (vector.size() != dim_) {
    throw ShapeMismatch("word vector for '" + symbol + "' has " + std::to_string(vector.size()) +
                        " entries, vocabulary uses " + std::to_string(dim_));
  }
  definitions_[symbol] = std::move(vector);
}

std::vector<float> WordVocab::vector(std::string_view token) const {
  const auto it = definitions_.find(token);
  if (it != definitions_.end()) return it->second;
  return pseudo_random_vector(token, dim_, seed_);
}

}  // namespace premsel::models
