#pragma once

#include <cstddef>
#include <map>
#include <string>

#include "premsel/corpus/corpus.hpp"

namespace premsel::corpus {

using Histogram = std::map<std::size_t, std::size_t>;

struct StatsReport {
  std::size_t statements = 0;
  /// value -> number of statements with that many characters / tokens.
  Histogram char_lengths;
  Histogram token_lengths;
  /// occurrence count -> number of distinct words occurring that often.
  /// Words are identifier tokens (symbol names and numerals).
  Histogram word_occurrences;
  std::size_t distinct_words = 0;
  /// dependency count -> number of conjectures.
  Histogram dependency_counts;
  /// Share of distinct words occurring fewer than 10 times.
  double rare_word_fraction = 0.0;
};

/// Throws EmptyCorpus.
StatsReport corpus_stats(const Corpus& corpus);

std::string format_stats(const StatsReport& report);

}  // namespace premsel::corpus
