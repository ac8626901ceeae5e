#pragma once

#include <cstddef>
#include <string>
#include <string_view>

#include <json.hpp>

namespace premsel::models {

enum class EmbedderKind {
  CharCnn,
  CharRnn,
  CharCnnRnn,
  WordCnn,
  WordCnnLstm,
};

enum class RnnCell { Lstm, Gru };

enum class Profile { Desk, Paper };

/// How word-level models obtain token vectors.
enum class WordSource {
  /// Every token gets a fixed pseudo-random vector.
  PseudoRandom,
  /// Defined symbols get the stage-1 embedding of their definition.
  Definitions,
};

const char* kind_name(EmbedderKind kind);
EmbedderKind parse_kind(std::string_view text);
bool is_word_kind(EmbedderKind kind);
bool has_conv(EmbedderKind kind);
bool has_rnn(EmbedderKind kind);

Profile parse_profile(std::string_view text);
const char* profile_name(Profile profile);

struct EmbedderConfig {
  EmbedderKind kind = EmbedderKind::CharCnn;
  std::size_t conv_layers = 2;
  std::size_t kernel_width = 3;
  std::size_t channels = 32;
  /// Stride of every conv layer after the first; the first always uses 1.
  std::size_t stride = 2;
  RnnCell rnn_cell = RnnCell::Lstm;
  /// Output width. Recurrent kinds use it as their hidden size too.
  std::size_t embedding_dim = 32;
  std::size_t max_seq_len = 2048;

  bool operator==(const EmbedderConfig&) const = default;
};

struct ModelConfig {
  EmbedderConfig embedder;
  std::size_t classifier_hidden = 64;
  /// Width of one input row: the char one-hot width, or the word vector size.
  std::size_t input_dim = 80;
  WordSource word_source = WordSource::PseudoRandom;
  Profile profile = Profile::Desk;

  bool operator==(const ModelConfig&) const = default;
};

/// Layer sizes for a method name: char-cnn, char-rnn, char-cnn-rnn, word-cnn,
/// def-cnn, def-cnn-lstm. Word methods take their input width from the
/// stage-1 embedding size, supplied later by the word vocabulary.
ModelConfig profile_config(std::string_view method, Profile profile);

/// Throws UsageError on inconsistent sizes.
void validate(const ModelConfig& config);

/// Input steps needed for one output of the conv stack (1 without convs).
std::size_t receptive_field(const EmbedderConfig& config);
/// Input steps between consecutive conv stack outputs.
std::size_t total_stride(const EmbedderConfig& config);
/// Output steps of the conv stack for `steps` input steps (0 if too short).
std::size_t conv_output_steps(const EmbedderConfig& config, std::size_t steps);

nlohmann::json to_json(const ModelConfig& config);
ModelConfig model_config_from_json(const nlohmann::json& j);

}  // namespace premsel::models
