#include "premsel/models/config.hpp"

#include "premsel/error.hpp"
#include "premsel/fol/char_vocab.hpp"

namespace premsel::models {

namespace {

struct KindName {
  EmbedderKind kind;
  const char* name;
};

constexpr KindName kKinds[] = {
    {EmbedderKind::CharCnn, "char_cnn"},   {EmbedderKind::CharRnn, "char_rnn"},
    {EmbedderKind::CharCnnRnn, "char_cnn_rnn"}, {EmbedderKind::WordCnn, "word_cnn"},
    {EmbedderKind::WordCnnLstm, "word_cnn_lstm"},
};

}  // namespace

const char* kind_name(EmbedderKind kind) {
  for (const auto& k : kKinds) {
    if (k.kind == kind) return k.name;
  }
  return "?";
}

EmbedderKind parse_kind(std::string_view text) {
  for (const auto& k : kKinds) {
    if (text == k.name) return k.kind;
  }
  throw UsageError("unknown embedder kind '" + std::string(text) + "'");
}

bool is_word_kind(EmbedderKind kind) { return kind == EmbedderKind::WordCnn || kind == EmbedderKind::WordCnnLstm; }
bool has_conv(EmbedderKind kind) { return kind != EmbedderKind::CharRnn; }
bool has_rnn(EmbedderKind kind) {
  return kind == EmbedderKind::CharRnn || kind == EmbedderKind::CharCnnRnn || kind == EmbedderKind::WordCnnLstm;
}

Profile parse_profile(std::string_view text) {
  if (text == "desk") return Profile::Desk;
  if (text == "paper") return Profile::Paper;
  throw UsageError("unknown profile '" + std::string(text) + "' (expected desk or paper)");
}

const char* profile_name(Profile profile) { return profile == Profile::Desk ? "desk" : "paper"; }

ModelConfig profile_config(std::string_view method, Profile profile) {
  ModelConfig c;
  c.profile = profile;
  EmbedderConfig& e = c.embedder;
  if (profile == Profile::Paper) {
    e.kernel_width = 5;
    e.channels = 256;
    e.embedding_dim = 256;
    c.classifier_hidden = 1024;
  }
  if (method == "char-cnn") {
    e.kind = EmbedderKind::CharCnn;
  } else if (method == "char-rnn") {
    e.kind = EmbedderKind::CharRnn;
  } else if (method == "char-cnn-rnn") {
    e.kind = EmbedderKind::CharCnnRnn;
  } else if (method == "word-cnn") {
    e.kind = EmbedderKind::WordCnn;
  } else if (method == "def-cnn") {
    e.kind = EmbedderKind::WordCnn;
    c.word_source = WordSource::Definitions;
  } else if (method == "def-cnn-lstm") {
    e.kind = EmbedderKind::WordCnnLstm;
    c.word_source = WordSource::Definitions;
  } else {
    throw UsageError("unknown method '" + std::string(method) + "'");
  }
  if (is_word_kind(e.kind)) {
    e.max_seq_len = 500;
    c.input_dim = e.embedding_dim;
  } else {
    c.input_dim = fol::CharVocab::kDefaultCapacity;
  }
  return c;
}

void validate(const ModelConfig& c) {
  const EmbedderConfig& e = c.embedder;
  if (e.embedding_dim == 0) throw UsageError("embedding_dim must be positive");
  if (c.input_dim == 0) throw UsageError("input_dim must be positive");
  if (c.classifier_hidden == 0) throw UsageError("classifier_hidden must be positive");
  if (e.max_seq_len == 0) throw UsageError("max_seq_len must be positive");
  if (has_conv(e.kind)) {
    if (e.conv_layers == 0) throw UsageError("convolutional embedders need at least one conv layer");
    if (e.kernel_width == 0 || e.stride == 0 || e.channels == 0) {
      throw UsageError("kernel width, stride and channels must be positive");
    }
  }
}

std::size_t receptive_field(const EmbedderConfig& e) {
  if (!has_conv(e.kind)) return 1;
  std::size_t field = 1, jump = 1;
  for (std::size_t l = 0; l < e.conv_layers; ++l) {
    field += (e.kernel_width - 1) * jump;
    jump *= l == 0 ? 1 : e.stride;
  }
  return field;
}

std::size_t total_stride(const EmbedderConfig& e) {
  if (!has_conv(e.kind)) return 1;
  std::size_t s = 1;
  for (std::size_t l = 1; l < e.conv_layers; ++l) s *= e.stride;
  return s;
}

std::size_t conv_output_steps(const EmbedderConfig& e, std::size_t steps) {
  if (!has_conv(e.kind)) return steps;
  for (std::size_t l = 0; l < e.conv_layers; ++l) {
    if (steps < e.kernel_width) return 0;
    steps = (steps - e.kernel_width) / (l == 0 ? 1 : e.stride) + 1;
  }
  return steps;
}

nlohmann::json to_json(const ModelConfig& c) {
  const EmbedderConfig& e = c.embedder;
  return {
      {"kind", kind_name(e.kind)},
      {"conv_layers", e.conv_layers},
      {"kernel_width", e.kernel_width},
      {"channels", e.channels},
      {"stride", e.stride},
      {"rnn_cell", e.rnn_cell == RnnCell::Lstm ? "lstm" : "gru"},
      {"embedding_dim", e.embedding_dim},
      {"max_seq_len", e.max_seq_len},
      {"classifier_hidden", c.classifier_hidden},
      {"input_dim", c.input_dim},
      {"word_source", c.word_source == WordSource::Definitions ? "definitions" : "pseudo_random"},
      {"profile", profile_name(c.profile)},
  };
}

ModelConfig model_config_from_json(const nlohmann::json& j) {
  try {
    ModelConfig c;
    EmbedderConfig& e = c.embedder;
    e.kind = parse_kind(j.at("kind").get<std::string>());
    e.conv_layers = j.at("conv_layers").get<std::size_t>();
    e.kernel_width = j.at("kernel_width").get<std::size_t>();
    e.channels = j.at("channels").get<std::size_t>();
    e.stride = j.at("stride").get<std::size_t>();
    e.rnn_cell = j.at("rnn_cell").get<std::string>() == "gru" ? RnnCell::Gru : RnnCell::Lstm;
    e.embedding_dim = j.at("embedding_dim").get<std::size_t>();
    e.max_seq_len = j.at("max_seq_len").get<std::size_t>();
    c.classifier_hidden = j.at("classifier_hidden").get<std::size_t>();
    c.input_dim = j.at("input_dim").get<std::size_t>();
    c.word_source =
        j.at("word_source").get<std::string>() == "definitions" ? WordSource::Definitions : WordSource::PseudoRandom;
    c.profile = parse_profile(j.at("profile").get<std::string>());
    validate(c);
    return c;
  } catch (const nlohmann::json::exception& ex) {
    throw DataError("CheckpointError", std::string("bad model config: ") + ex.what());
  }
}

}  // namespace premsel::models
