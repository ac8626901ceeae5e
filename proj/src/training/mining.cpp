#include "premsel/training/mining.hpp"

#include <algorithm>

#include "premsel/error.hpp"

namespace premsel::training {

TrainingLabels::TrainingLabels(const Corpus& corpus, const corpus::Split& split)
    : corpus_(corpus), train_(split.train), is_train_(corpus.size(), false) {
  for (const StatementId c : train_) {
    if (c >= corpus.size()) throw DataError("UnknownName", "split refers to statement " + std::to_string(c));
    is_train_[c] = true;
  }
}

std::span<const StatementId> TrainingLabels::positives(StatementId conjecture) const {
  if (conjecture >= corpus_.size() || !is_train_[conjecture]) {
    const std::string name = conjecture < corpus_.size() ? corpus_[conjecture].name : std::to_string(conjecture);
    throw ComputeError("LabelLeak", "training asked for the labels of non-train conjecture '" + name + "'");
  }
  return corpus_.positives(conjecture);
}

bool TrainingLabels::is_positive(StatementId conjecture, StatementId premise) const {
  const auto pos = positives(conjecture);
  return std::binary_search(pos.begin(), pos.end(), premise);
}

std::vector<StatementId> select_hard_negatives(std::span<const double> positive_scores,
                                               std::span<const std::pair<StatementId, double>> negatives,
                                               std::size_t count) {
  if (positive_scores.empty()) return {};
  const double floor = *std::min_element(positive_scores.begin(), positive_scores.end());
  std::vector<std::pair<StatementId, double>> above;
  for (const auto& n : negatives) {
    if (n.second > floor) above.push_back(n);
  }
  std::sort(above.begin(), above.end(),
            [](const auto& a, const auto& b) { return a.second != b.second ? a.second < b.second : a.first < b.first; });
  if (above.size() > count) above.resize(count);
  std::vector<StatementId> out;
  out.reserve(above.size());
  for (const auto& [id, score] : above) out.push_back(id);
  return out;
}

std::vector<StatementId> mine_negatives(const PremiseScorer& scorer, const TrainingLabels& labels,
                                        StatementId conjecture, std::span<const StatementId> pool, std::size_t count) {
  const auto pos = labels.positives(conjecture);
  if (pos.empty()) {
    throw DataError("NoPositives", "'" + labels.corpus()[conjecture].name + "' has no dependencies");
  }
  std::vector<StatementId> candidates(pos.begin(), pos.end());
  for (const StatementId p : pool) {
    if (p < conjecture && !std::binary_search(pos.begin(), pos.end(), p)) candidates.push_back(p);
  }
  std::sort(candidates.begin() + static_cast<std::ptrdiff_t>(pos.size()), candidates.end());
  candidates.erase(std::unique(candidates.begin() + static_cast<std::ptrdiff_t>(pos.size()), candidates.end()),
                   candidates.end());
  const std::vector<double> scores = scorer(conjecture, candidates);
  if (scores.size() != candidates.size()) throw ShapeMismatch("mining scorer returned the wrong number of scores");
  std::vector<std::pair<StatementId, double>> negatives;
  for (std::size_t i = pos.size(); i < candidates.size(); ++i) negatives.emplace_back(candidates[i], scores[i]);
  return select_hard_negatives(std::span(scores).first(pos.size()), negatives, count);
}

NegativeQueue::NegativeQueue(const TrainingLabels& labels, std::size_t capacity) : labels_(labels), capacity_(capacity) {
  if (capacity == 0) throw UsageError("negative queue capacity must be positive");
}

bool NegativeQueue::push(MinedPair pair) {
  if (pair.premise >= pair.conjecture || labels_.is_positive(pair.conjecture, pair.premise)) return false;
  std::lock_guard lock(mutex_);
  if (items_.size() == capacity_) items_.pop_front();
  items_.push_back(pair);
  return true;
}

MinedPair NegativeQueue::sample(Rng& rng) const {
  std::lock_guard lock(mutex_);
  if (items_.empty()) throw ComputeError("EmptyQueue", "sampled an empty negative queue");
  return items_[rng.index(items_.size())];
}

std::size_t NegativeQueue::size() const {
  std::lock_guard lock(mutex_);
  return items_.size();
}

std::vector<MinedPair> NegativeQueue::contents() const {
  std::lock_guard lock(mutex_);
  return {items_.begin(), items_.end()};
}

}  // namespace premsel::training
