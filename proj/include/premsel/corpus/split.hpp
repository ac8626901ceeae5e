#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "premsel/corpus/corpus.hpp"

namespace premsel::corpus {

/// Held-out conjectures. train and test partition the provable set; monitor
/// is carved out of test. All lists are in corpus order.
struct Split {
  std::vector<StatementId> train;
  std::vector<StatementId> test;
  std::vector<StatementId> monitor;

  /// test minus monitor: the final evaluation set.
  std::vector<StatementId> evaluation() const;

  bool operator==(const Split&) const = default;
};

/// |test| = round(test_fraction * |provable|); monitor is the first
/// monitor_count test conjectures in shuffled order. Throws TooSmallCorpus.
Split make_split(const Corpus& corpus, double test_fraction, std::size_t monitor_count, std::uint64_t seed);

/// One line per provable conjecture: `name train|test|monitor`.
std::string format_split(const Corpus& corpus, const Split& split);
Split parse_split(const Corpus& corpus, std::string_view text);

}  // namespace premsel::corpus
