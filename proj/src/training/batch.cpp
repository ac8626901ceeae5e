#include "premsel/training/batch.hpp"

#include <algorithm>
#include <cmath>

#include "premsel/error.hpp"

namespace premsel::training {

const char* provenance_name(Provenance provenance) {
  switch (provenance) {
    case Provenance::Positive:
      return "positive";
    case Provenance::RandomNegative:
      return "random_negative";
    case Provenance::MinedNegative:
      return "mined_negative";
  }
  return "?";
}

BatchComposition batch_composition(std::size_t batch_size, double mined_ratio, bool queue_empty, Rng& rng) {
  if (!(mined_ratio >= 0.0 && mined_ratio <= 1.0)) throw UsageError("mined ratio must lie in [0, 1]");
  BatchComposition c;
  if (!queue_empty) {
    const double expected = static_cast<double>(batch_size) * mined_ratio;
    const double whole = std::floor(expected);
    c.mined = static_cast<std::size_t>(whole) + (rng.uniform() < expected - whole ? 1 : 0);
    c.mined = std::min(c.mined, batch_size);
  }
  const std::size_t rest = batch_size - c.mined;
  c.positive = (rest + 1) / 2;
  c.random_negative = rest / 2;
  return c;
}

std::vector<TrainExample> make_batch(const TrainingLabels& labels, const NegativeQueue& queue, std::size_t batch_size,
                                     double mined_ratio, Rng& rng) {
  const auto& train = labels.train();
  // Conjectures with at least one available non-positive premise.
  std::vector<StatementId> negatable;
  for (const StatementId c : train) {
    if (c > labels.positives(c).size()) negatable.push_back(c);
  }
  if (train.empty()) throw DataError("EmptySplit", "no train conjectures");

  const BatchComposition comp = batch_composition(batch_size, mined_ratio, queue.empty(), rng);
  std::vector<TrainExample> batch;
  batch.reserve(batch_size);
  for (std::size_t i = 0; i < comp.positive; ++i) {
    const StatementId c = train[rng.index(train.size())];
    const auto pos = labels.positives(c);
    batch.push_back({c, pos[rng.index(pos.size())], 1.0f, Provenance::Positive});
  }
  for (std::size_t i = 0; i < comp.random_negative; ++i) {
    if (negatable.empty()) break;
    const StatementId c = negatable[rng.index(negatable.size())];
    // Index among the non-positives, then shift past the positives below it.
    const auto pos = labels.positives(c);
    StatementId p = rng.index(c - pos.size());
    for (const StatementId q : pos) {
      if (q <= p) ++p;
    }
    batch.push_back({c, p, 0.0f, Provenance::RandomNegative});
  }
  for (std::size_t i = 0; i < comp.mined; ++i) {
    const MinedPair m = queue.sample(rng);
    batch.push_back({m.conjecture, m.premise, 0.0f, Provenance::MinedNegative});
  }
  return batch;
}

}  // namespace premsel::training
