#include "premsel/models/ranking.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numeric>

#include "premsel/error.hpp"
#include "premsel/ndt/ops.hpp"

namespace premsel::models {

namespace {

constexpr std::size_t kEmbedBatch = 32;

std::string cache_key(Side side, const std::string& name) { return side_prefix(side) + name; }

}  // namespace

std::optional<std::vector<float>> EmbeddingCache::lookup(std::uint64_t checksum, Side side,
                                                         const std::string& name) const {
  if (checksum != checksum_) return std::nullopt;
  std::shared_lock lock(mutex_);
  const auto it = entries_.find(cache_key(side, name));
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

void EmbeddingCache::store(std::uint64_t checksum, Side side, const std::string& name, std::vector<float> embedding) {
  if (checksum != checksum_) return;
  std::unique_lock lock(mutex_);
  entries_[cache_key(side, name)] = std::move(embedding);
}

std::size_t EmbeddingCache::size() const {
  std::shared_lock lock(mutex_);
  return entries_.size();
}

ndt::Bundle EmbeddingCache::to_bundle() const {
  std::shared_lock lock(mutex_);
  ndt::Bundle b;
  b.meta = {{"format", "premsel-embeddings"}, {"checksum", std::to_string(checksum_)}};
  for (const auto& [key, v] : entries_) b.f32.emplace_back(key, Tensor<float>({v.size()}, v));
  return b;
}

EmbeddingCache EmbeddingCache::from_bundle(const ndt::Bundle& b) {
  if (b.meta.value("format", "") != "premsel-embeddings") {
    throw DataError("CheckpointError", "not an embedding cache");
  }
  EmbeddingCache cache(std::stoull(b.meta.at("checksum").get<std::string>()));
  for (const auto& [key, t] : b.f32) cache.entries_[key] = t.values();
  return cache;
}

Scorer::Scorer(const PairModel& model, const corpus::Corpus& corpus, const std::vector<Tensor<float>>& inputs,
               const ParamStore<float>& weights, EmbeddingCache& cache)
    : model_(model),
      corpus_(corpus),
      inputs_(inputs),
      weights_(weights),
      checksum_(model.checksum(weights)),
      cache_(&cache) {
  if (inputs_.size() != corpus_.size()) throw ShapeMismatch("scorer: encoded inputs do not match the corpus");
}

Scorer::Scorer(const PairModel& model, const corpus::Corpus& corpus, const std::vector<Tensor<float>>& inputs)
    : model_(model),
      corpus_(corpus),
      inputs_(inputs),
      weights_(model.shadows()),
      checksum_(model.checksum()),
      own_cache_(std::in_place, checksum_),
      cache_(&*own_cache_) {
  if (inputs_.size() != corpus_.size()) throw ShapeMismatch("scorer: encoded inputs do not match the corpus");
}

void Scorer::prepare(Side side, std::span<const StatementId> ids) {
  std::vector<StatementId> missing;
  for (const StatementId id : ids) {
    if (!cache_->lookup(checksum_, side, corpus_[id].name)) missing.push_back(id);
  }
  std::sort(missing.begin(), missing.end());
  missing.erase(std::unique(missing.begin(), missing.end()), missing.end());
  const std::size_t dim = model_.config().embedder.embedding_dim;
  for (std::size_t start = 0; start < missing.size(); start += kEmbedBatch) {
    const std::size_t end = std::min(missing.size(), start + kEmbedBatch);
    std::vector<const Tensor<float>*> batch;
    for (std::size_t i = start; i < end; ++i) batch.push_back(&inputs_[missing[i]]);
    ndt::Tape<float> tape;
    Binder<float> bind(tape, weights_, false);
    const Tensor<float>& rows = tape.value(embed_batch<float>(bind, model_.config(), side, batch));
    for (std::size_t i = start; i < end; ++i) {
      const auto row = rows.data().subspan((i - start) * dim, dim);
      cache_->store(checksum_, side, corpus_[missing[i]].name, std::vector<float>(row.begin(), row.end()));
    }
  }
}

std::vector<float> Scorer::embedding(Side side, StatementId id) {
  if (auto hit = cache_->lookup(checksum_, side, corpus_[id].name)) return *hit;
  const StatementId one[] = {id};
  prepare(side, one);
  if (auto hit = cache_->lookup(checksum_, side, corpus_[id].name)) return *hit;
  // Cache tagged for another model: compute without storing.
  ndt::Tape<float> tape;
  Binder<float> bind(tape, weights_, false);
  return tape.value(embed_sequence<float>(bind, model_.config(), side, inputs_[id])).values();
}

std::vector<double> Scorer::logits(StatementId conjecture, std::span<const StatementId> premises) {
  if (premises.empty()) return {};
  const std::size_t dim = model_.config().embedder.embedding_dim;
  prepare(Side::Axiom, premises);
  const std::vector<float> conj = embedding(Side::Conjecture, conjecture);
  Tensor<float> conj_rows({premises.size(), dim});
  Tensor<float> axiom_rows({premises.size(), dim});
  for (std::size_t i = 0; i < premises.size(); ++i) {
    const auto a = embedding(Side::Axiom, premises[i]);
    std::copy(conj.begin(), conj.end(), conj_rows.data().begin() + static_cast<std::ptrdiff_t>(i * dim));
    std::copy(a.begin(), a.end(), axiom_rows.data().begin() + static_cast<std::ptrdiff_t>(i * dim));
  }
  ndt::Tape<float> tape;
  Binder<float> bind(tape, weights_, false);
  const Var z = classify<float>(bind, model_.config(), tape.constant(std::move(conj_rows)),
                                tape.constant(std::move(axiom_rows)));
  const auto& values = tape.value(z).values();
  return std::vector<double>(values.begin(), values.end());
}

std::vector<double> Scorer::probabilities(StatementId conjecture, std::span<const StatementId> premises) {
  std::vector<double> z = logits(conjecture, premises);
  for (double& x : z) x = 1.0 / (1.0 + std::exp(-x));
  return z;
}

RankingResult rank_premises(Scorer& scorer, StatementId conjecture) {
  std::vector<StatementId> pool(conjecture);
  std::iota(pool.begin(), pool.end(), StatementId{0});
  const std::vector<double> z = scorer.logits(conjecture, pool);
  std::vector<std::size_t> order(pool.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return z[a] > z[b]; });
  RankingResult r;
  r.conjecture = scorer.corpus()[conjecture].name;
  r.premises.reserve(order.size());
  for (const std::size_t i : order) r.premises.emplace_back(scorer.corpus()[pool[i]].name, 1.0 / (1.0 + std::exp(-z[i])));
  return r;
}

WordVocab build_word_vocab(const PairModel& stage1, const corpus::Corpus& corpus, std::uint64_t seed) {
  WordVocab vocab(stage1.config().embedder.embedding_dim, seed);
  const auto inputs = stage1.encode_all(corpus);
  Scorer scorer(stage1, corpus, inputs);
  std::vector<StatementId> defining;
  for (const auto& [symbol, statement] : corpus.defines()) {
    const auto id = corpus.find(statement);
    if (!id) throw DataError("MissingDefinition", "symbol '" + symbol + "' is defined by unknown '" + statement + "'");
    defining.push_back(*id);
  }
  scorer.prepare(Side::Axiom, defining);
  std::size_t i = 0;
  for (const auto& [symbol, statement] : corpus.defines()) vocab.define(symbol, scorer.embedding(Side::Axiom, defining[i++]));
  return vocab;
}

}  // namespace premsel::models
