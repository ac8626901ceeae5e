#pragma once

#include <cstddef>
#include <deque>
#include <functional>
#include <mutex>
#include <span>
#include <utility>
#include <vector>

#include "premsel/corpus/corpus.hpp"
#include "premsel/corpus/split.hpp"
#include "premsel/rng.hpp"

namespace premsel::training {

using corpus::Corpus;
using corpus::StatementId;

/// Label access for training. Positives are readable only for train-split
/// conjectures; asking about any other conjecture throws LabelLeak. Premises
/// are unrestricted, so test statements can still serve as axioms.
class TrainingLabels {
public:
  TrainingLabels(const Corpus& corpus, const corpus::Split& split);

  const Corpus& corpus() const { return corpus_; }
  const std::vector<StatementId>& train() const { return train_; }
  bool is_train(StatementId conjecture) const { return is_train_.at(conjecture); }

  std::span<const StatementId> positives(StatementId conjecture) const;
  bool is_positive(StatementId conjecture, StatementId premise) const;

private:
  const Corpus& corpus_;
  std::vector<StatementId> train_;
  std::vector<bool> is_train_;
};

/// Scores for one conjecture against several premises; higher is better.
using PremiseScorer = std::function<std::vector<double>(StatementId conjecture, std::span<const StatementId> premises)>;

/// The hard-negative rule on precomputed scores: up to `count` negatives whose
/// score is strictly above the lowest positive score, lowest score first,
/// ties by index. Empty when there are no positive scores.
std::vector<StatementId> select_hard_negatives(std::span<const double> positive_scores,
                                               std::span<const std::pair<StatementId, double>> negatives,
                                               std::size_t count);

/// Scores every positive of `conjecture` and the non-positives of `pool`,
/// then applies select_hard_negatives. Throws NoPositives.
std::vector<StatementId> mine_negatives(const PremiseScorer& scorer, const TrainingLabels& labels,
                                        StatementId conjecture, std::span<const StatementId> pool, std::size_t count);

struct MinedPair {
  StatementId conjecture = 0;
  StatementId premise = 0;
  bool operator==(const MinedPair&) const = default;
};

/// Bounded FIFO of mined pairs; the oldest entry is evicted first. Positives
/// are refused. Thread-safe.
class NegativeQueue {
public:
  NegativeQueue(const TrainingLabels& labels, std::size_t capacity);

  /// False (and nothing stored) for a positive pair.
  bool push(MinedPair pair);
  /// Uniform draw with replacement. Requires a non-empty queue.
  MinedPair sample(Rng& rng) const;

  std::size_t size() const;
  std::size_t capacity() const { return capacity_; }
  bool empty() const { return size() == 0; }
  std::vector<MinedPair> contents() const;

private:
  const TrainingLabels& labels_;
  std::size_t capacity_;
  mutable std::mutex mutex_;
  std::deque<MinedPair> items_;
};

}  // namespace premsel::training
