#pragma once

#include <cstddef>
#include <vector>

#include "premsel/rng.hpp"
#include "premsel/training/mining.hpp"

namespace premsel::training {

enum class Provenance { Positive, RandomNegative, MinedNegative };

const char* provenance_name(Provenance provenance);

struct TrainExample {
  StatementId conjecture = 0;
  StatementId premise = 0;
  float label = 0.0f;
  Provenance provenance = Provenance::Positive;
};

struct BatchComposition {
  std::size_t mined = 0;
  std::size_t positive = 0;
  std::size_t random_negative = 0;
};

/// Slot counts for one batch. The mined count is batch_size * mined_ratio,
/// rounded stochastically so its mean is exact, and 0 for an empty queue.
/// The rest splits evenly, the odd slot going to the positives.
BatchComposition batch_composition(std::size_t batch_size, double mined_ratio, bool queue_empty, Rng& rng);

/// Samples a batch over the train conjectures of `labels`: positives and
/// random negatives pick a conjecture uniformly, then a premise uniformly
/// among its positives or its available non-positives. Mined examples are
/// drawn from `queue`. Order is positives, random negatives, mined.
std::vector<TrainExample> make_batch(const TrainingLabels& labels, const NegativeQueue& queue, std::size_t batch_size,
                                     double mined_ratio, Rng& rng);

}  // namespace premsel::training
