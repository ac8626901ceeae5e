#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "premsel/corpus/corpus.hpp"
#include "premsel/fol/char_vocab.hpp"
#include "premsel/models/config.hpp"
#include "premsel/models/embedder.hpp"
#include "premsel/models/word_vocab.hpp"
#include "premsel/ndt/checkpoint.hpp"

namespace premsel::models {

/// Conjecture embedder, axiom embedder and pair classifier, plus whatever the
/// input encoding needs (char table or word vectors). Holds both the raw
/// weights and their Polyak shadows; scoring uses the shadows.
class PairModel {
public:
  PairModel(ModelConfig config, fol::CharVocab chars, WordVocab words, ParamStore<float> params);

  /// Fresh model with Glorot-initialised weights. Shadows start equal to the
  /// weights.
  static PairModel initialize(ModelConfig config, fol::CharVocab chars, WordVocab words, std::uint64_t seed);

  const ModelConfig& config() const { return config_; }
  const fol::CharVocab& char_vocab() const { return chars_; }
  const WordVocab& word_vocab() const { return words_; }

  ParamStore<float>& params() { return params_; }
  const ParamStore<float>& params() const { return params_; }
  ParamStore<float>& shadows() { return shadows_; }
  const ParamStore<float>& shadows() const { return shadows_; }

  /// Free-form training record stored with the checkpoint.
  nlohmann::json& meta() { return meta_; }
  const nlohmann::json& meta() const { return meta_; }

  /// [steps, input_dim] input rows, truncated to max_seq_len.
  Tensor<float> encode(const fol::Statement& statement) const;
  std::vector<Tensor<float>> encode_all(const corpus::Corpus& corpus) const;

  /// Identifies the scoring behaviour: config, vocabularies and shadows.
  std::uint64_t checksum() const { return checksum(shadows_); }
  /// Same, for scoring with `weights` in place of the shadows.
  std::uint64_t checksum(const ParamStore<float>& weights) const;

private:
  ModelConfig config_;
  fol::CharVocab chars_;
  WordVocab words_;
  ParamStore<float> params_;
  ParamStore<float> shadows_;
  nlohmann::json meta_ = nlohmann::json::object();
};

ndt::Bundle to_bundle(const PairModel& model);
/// Throws DataError("CheckpointError") on missing or mis-shaped tensors.
PairModel from_bundle(const ndt::Bundle& bundle);
void save_model(const PairModel& model, const std::filesystem::path& path);
PairModel load_model(const std::filesystem::path& path);

}  // namespace premsel::models
