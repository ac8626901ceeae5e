#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <shared_mutex>
#include <span>
#include <string>
#include <vector>

#include "premsel/models/pair_model.hpp"
#include "premsel/ranking.hpp"

namespace premsel::models {

using corpus::StatementId;

/// Statement embeddings keyed by (side, name), valid for one model checksum.
/// Lookups under a different checksum miss. Safe for concurrent readers with
/// exclusive writers.
class EmbeddingCache {
public:
  explicit EmbeddingCache(std::uint64_t checksum = 0) : checksum_(checksum) {}
  EmbeddingCache(EmbeddingCache&& other) noexcept : checksum_(other.checksum_), entries_(std::move(other.entries_)) {}

  std::uint64_t checksum() const { return checksum_; }
  std::optional<std::vector<float>> lookup(std::uint64_t checksum, Side side, const std::string& name) const;
  void store(std::uint64_t checksum, Side side, const std::string& name, std::vector<float> embedding);
  std::size_t size() const;

  ndt::Bundle to_bundle() const;
  static EmbeddingCache from_bundle(const ndt::Bundle& bundle);

private:
  std::uint64_t checksum_;
  mutable std::shared_mutex mutex_;
  std::map<std::string, std::vector<float>> entries_;  // "conj/<name>" or "axiom/<name>"
};

/// Forward-only scoring of (conjecture, premise) pairs with one fixed set of
/// weights. Embeddings are computed in batches and memoised in the cache.
/// Not thread-safe itself; share the cache instead.
class Scorer {
public:
  /// `inputs` are the encoded statements of `corpus` (PairModel::encode_all).
  /// A cache tagged for other weights is left alone and never consulted.
  Scorer(const PairModel& model, const corpus::Corpus& corpus, const std::vector<Tensor<float>>& inputs,
         const ParamStore<float>& weights, EmbeddingCache& cache);

  /// Scores with the model's shadows and a private cache.
  Scorer(const PairModel& model, const corpus::Corpus& corpus, const std::vector<Tensor<float>>& inputs);

  std::vector<float> embedding(Side side, StatementId id);
  /// Embeds every id not yet cached, in batches.
  void prepare(Side side, std::span<const StatementId> ids);

  /// Classifier logits for `conjecture` against each premise.
  std::vector<double> logits(StatementId conjecture, std::span<const StatementId> premises);
  /// sigmoid(logits).
  std::vector<double> probabilities(StatementId conjecture, std::span<const StatementId> premises);

  const corpus::Corpus& corpus() const { return corpus_; }

private:
  const PairModel& model_;
  const corpus::Corpus& corpus_;
  const std::vector<Tensor<float>>& inputs_;
  const ParamStore<float>& weights_;
  std::uint64_t checksum_;
  std::optional<EmbeddingCache> own_cache_;
  EmbeddingCache* cache_;
};

/// Every available premise of `conjecture` by descending score; equal scores
/// keep chronological order. Scores are probabilities.
RankingResult rank_premises(Scorer& scorer, StatementId conjecture);

/// Stage-2 vocabulary: each defined symbol maps to the stage-1 axiom
/// embedding of its defining statement; other tokens stay pseudo-random.
/// Throws MissingDefinition when a defining statement is absent.
WordVocab build_word_vocab(const PairModel& stage1, const corpus::Corpus& corpus, std::uint64_t seed);

}  // namespace premsel::models
