#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace premsel::models {

/// Fixed unit-norm vector for `token`, a pure function of (seed, token, dim).
std::vector<float> pseudo_random_vector(std::string_view token, std::size_t dim, std::uint64_t seed);

/// Token -> input vector for the word-level models. Defined symbols map to an
/// explicit vector (a stage-1 definition embedding); every other token maps
/// to its pseudo-random vector. Vectors are inputs, never trained.
class WordVocab {
public:
  WordVocab() = default;
  WordVocab(std::size_t dim, std::uint64_t seed) : dim_(dim), seed_(seed) {}

  std::size_t dim() const { return dim_; }
  std::uint64_t seed() const { return seed_; }

  /// Throws ShapeMismatch when the vector length differs from dim().
  void define(const std::string& symbol, std::vector<float> vector);
  bool is_defined(std::string_view token) const { return definitions_.find(token) != definitions_.end(); }
  std::vector<float> vector(std::string_view token) const;
  const std::map<std::string, std::vector<float>, std::less<>>& definitions() const { return definitions_; }

  bool operator==(const WordVocab&) const = default;

private:
  std::size_t dim_ = 0;
  std::uint64_t seed_ = 0;
  std::map<std::string, std::vector<float>, std::less<>> definitions_;
};

}  // namespace premsel::models
