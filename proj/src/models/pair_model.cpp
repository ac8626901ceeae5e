#include "premsel/models/pair_model.hpp"

#include "premsel/error.hpp"
#include "premsel/rng.hpp"

namespace premsel::models {

namespace {

constexpr const char* kFormat = "premsel-model";
constexpr const char* kWordVectors = "word_vectors";

}  // namespace

PairModel::PairModel(ModelConfig config, fol::CharVocab chars, WordVocab words, ParamStore<float> params)
    : config_(std::move(config)), chars_(std::move(chars)), words_(std::move(words)), params_(std::move(params)) {
  validate(config_);
  if (is_word_kind(config_.embedder.kind) && words_.dim() != config_.input_dim) {
    throw UsageError("word vectors have " + std::to_string(words_.dim()) + " entries but the model expects " +
                     std::to_string(config_.input_dim));
  }
  for (const auto& [name, shape] : parameter_shapes(config_)) {
    const auto it = params_.find(name);
    if (it == params_.end() || it->second.shape() != shape) {
      throw ShapeMismatch("parameter '" + name + "' missing or not " + ndt::shape_string(shape));
    }
  }
  if (params_.size() != parameter_shapes(config_).size()) throw ShapeMismatch("unexpected extra parameters");
  shadows_ = params_;
}

PairModel PairModel::initialize(ModelConfig config, fol::CharVocab chars, WordVocab words, std::uint64_t seed) {
  ParamStore<float> params = init_params<float>(config, seed);
  return PairModel(std::move(config), std::move(chars), std::move(words), std::move(params));
}

Tensor<float> PairModel::encode(const fol::Statement& statement) const {
  const std::size_t max_len = config_.embedder.max_seq_len;
  if (!is_word_kind(config_.embedder.kind)) {
    const auto idx = fol::char_encode(statement, chars_, max_len);
    Tensor<float> out({idx.size(), config_.input_dim});
    for (std::size_t t = 0; t < idx.size(); ++t) {
      if (idx[t] != fol::CharVocab::kPad && idx[t] < config_.input_dim) out.at(t, idx[t]) = 1.0f;
    }
    return out;
  }
  const std::size_t steps = std::min(statement.tokens.size(), max_len);
  Tensor<float> out({steps, config_.input_dim});
  for (std::size_t t = 0; t < steps; ++t) {
    const auto v = words_.vector(statement.tokens[t].text);
    std::copy(v.begin(), v.end(), out.data().begin() + static_cast<std::ptrdiff_t>(t * config_.input_dim));
  }
  return out;
}

std::vector<Tensor<float>> PairModel::encode_all(const corpus::Corpus& corpus) const {
  std::vector<Tensor<float>> out;
  out.reserve(corpus.size());
  for (const auto& s : corpus.statements()) out.push_back(encode(s));
  return out;
}

std::uint64_t PairModel::checksum(const ParamStore<float>& weights) const {
  std::uint64_t h = fnv1a(to_json(config_).dump());
  const auto bytes = chars_.bytes();
  h = fnv1a(std::as_bytes(std::span(bytes)), h);
  h = fnv1a(std::to_string(words_.seed()), h);
  for (const auto& [symbol, v] : words_.definitions()) {
    h = fnv1a(symbol, h);
    h = fnv1a(std::as_bytes(std::span(v)), h);
  }
  return fnv1a(std::to_string(ndt::params_checksum(weights)), h);
}

ndt::Bundle to_bundle(const PairModel& model) {
  ndt::Bundle b;
  const auto bytes = model.char_vocab().bytes();
  nlohmann::json symbols = nlohmann::json::array();
  for (const auto& [symbol, v] : model.word_vocab().definitions()) symbols.push_back(symbol);
  b.meta = {
      {"format", kFormat},
      {"config", to_json(model.config())},
      {"char_vocab", std::vector<int>(bytes.begin(), bytes.end())},
      {"word_vocab", {{"dim", model.word_vocab().dim()}, {"seed", model.word_vocab().seed()}, {"symbols", symbols}}},
      {"training", model.meta()},
  };
  for (const auto& [name, t] : model.params()) {
    b.f32.emplace_back(name, t);
    b.f32.emplace_back(ndt::shadow_name(name), model.shadows().at(name));
  }
  const auto& defs = model.word_vocab().definitions();
  if (!defs.empty()) {
    Tensor<float> table({defs.size(), model.word_vocab().dim()});
    std::size_t row = 0;
    for (const auto& [symbol, v] : defs) {
      std::copy(v.begin(), v.end(), table.data().begin() + static_cast<std::ptrdiff_t>(row * v.size()));
      ++row;
    }
    b.f32.emplace_back(kWordVectors, std::move(table));
  }
  return b;
}

PairModel from_bundle(const ndt::Bundle& b) {
  try {
    if (b.meta.value("format", "") != kFormat) throw DataError("CheckpointError", "not a model checkpoint");
    const ModelConfig config = model_config_from_json(b.meta.at("config"));
    const auto raw = b.meta.at("char_vocab").get<std::vector<int>>();
    const std::vector<unsigned char> bytes(raw.begin(), raw.end());
    const fol::CharVocab chars = fol::CharVocab::from_bytes(bytes);
    const auto& wv = b.meta.at("word_vocab");
    WordVocab words(wv.at("dim").get<std::size_t>(), wv.at("seed").get<std::uint64_t>());
    const auto symbols = wv.at("symbols").get<std::vector<std::string>>();
    if (!symbols.empty()) {
      const Tensor<float>& table = b.tensor(kWordVectors);
      if (table.rank() != 2 || table.dim(0) != symbols.size() || table.dim(1) != words.dim()) {
        throw DataError("CheckpointError", "word vector table does not match its symbol list");
      }
      for (std::size_t i = 0; i < symbols.size(); ++i) {
        const auto row = table.data().subspan(i * words.dim(), words.dim());
        words.define(symbols[i], std::vector<float>(row.begin(), row.end()));
      }
    }
    ParamStore<float> params;
    ParamStore<float> shadows;
    for (const auto& [name, shape] : parameter_shapes(config)) {
      if (!b.has(name) || !b.has(ndt::shadow_name(name))) {
        throw DataError("CheckpointError", "checkpoint lacks parameter '" + name + "'");
      }
      params.emplace(name, b.tensor(name));
      shadows.emplace(name, b.tensor(ndt::shadow_name(name)));
    }
    PairModel model(config, chars, std::move(words), std::move(params));
    for (auto& [name, t] : shadows) {
      if (t.shape() != model.params().at(name).shape()) {
        throw DataError("CheckpointError", "shadow of '" + name + "' has the wrong shape");
      }
    }
    model.shadows() = std::move(shadows);
    model.meta() = b.meta.value("training", nlohmann::json::object());
    return model;
  } catch (const ShapeMismatch& e) {
    throw DataError("CheckpointError", e.what());
  } catch (const nlohmann::json::exception& e) {
    throw DataError("CheckpointError", e.what());
  }
}

void save_model(const PairModel& model, const std::filesystem::path& path) { ndt::save_bundle(to_bundle(model), path); }

PairModel load_model(const std::filesystem::path& path) { return from_bundle(ndt::load_bundle(path)); }

}  // namespace premsel::models
