#pragma once

#include <cstdint>
#include <filesystem>

#include "premsel/corpus/corpus.hpp"

namespace premsel::corpus {

enum class DepModel {
  /// Premises are the definitions of the conjecture's symbols plus a few
  /// earlier theorems sharing one of them. Learnable.
  SharedSymbol,
  /// Premises drawn uniformly from earlier statements. No signal; a control.
  Random,
};

DepModel parse_dep_model(std::string_view text);

struct SynthParams {
  std::size_t n_statements = 200;
  std::size_t n_symbols = 30;
  std::uint64_t seed = 1;
  DepModel dep_model = DepModel::SharedSymbol;
};

/// Generates a Mizar-flavoured corpus: defined function symbols, their
/// definitions, and theorems built over them. Definitions precede uses.
/// Throws TooSmallCorpus for fewer than 10 statements.
Corpus synth_corpus(const SynthParams& params);

/// synth_corpus + write_corpus into `dir`.
Corpus write_synth_corpus(const SynthParams& params, const std::filesystem::path& dir);

}  // namespace premsel::corpus
