#pragma once

#include <span>
#include <utility>
#include <vector>

#include "premsel/corpus/corpus.hpp"
#include "premsel/knn/features.hpp"
#include "premsel/ranking.hpp"

namespace premsel::knn {

using corpus::StatementId;

/// Distance-weighted k-NN premise ranking. Statements are compared by cosine
/// similarity of TF-IDF weighted feature counts (IDF over the whole corpus);
/// the k most similar training conjectures vote for their dependencies with
/// weight equal to their similarity. Immutable after construction.
class KnnIndex {
public:
  /// `neighbors` are the conjectures whose dependencies may be voted with,
  /// normally the training split.
  KnnIndex(const corpus::Corpus& corpus, std::span<const StatementId> neighbors);

  double similarity(StatementId a, StatementId b) const;

  /// Top-k neighbor conjectures of `conjecture` (itself excluded), most
  /// similar first, ties by chronological index.
  std::vector<std::pair<StatementId, double>> nearest(StatementId conjecture, std::size_t k) const;

  /// Every available premise, by total vote then chronological index.
  /// Unvoted premises trail with score 0. Throws EmptyPool.
  RankingResult rank(StatementId conjecture, std::size_t k) const;

private:
  struct Vector {
    std::vector<std::pair<std::size_t, double>> entries;  // feature id -> weight, sorted
    double norm = 0.0;
  };

  const corpus::Corpus& corpus_;
  std::vector<StatementId> neighbors_;
  std::vector<Vector> vectors_;
};

}  // namespace premsel::knn
