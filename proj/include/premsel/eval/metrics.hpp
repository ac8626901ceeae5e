#pragma once

#include <cstdint>
#include <functional>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "premsel/corpus/corpus.hpp"
#include "premsel/ranking.hpp"

namespace premsel::eval {

using corpus::Corpus;
using corpus::StatementId;

inline constexpr std::size_t kApproxNegatives = 128;

/// Largest 1-based position of any of `positives` in `ranking`, divided by
/// `pool_size`. Throws MissingPremiseInRanking.
double max_relative_rank(const RankingResult& ranking, std::span<const std::string> positives, std::size_t pool_size);

/// Mean max relative rank over conjectures, each ranking covering the full
/// available pool. Throws MissingPremiseInRanking (also for a ranking whose
/// length differs from the pool).
double amrr(std::span<const RankingResult> rankings, const Corpus& corpus);

/// Scores for (conjecture, premise) pairs; higher is better.
using PairScorer = std::function<std::vector<double>(StatementId conjecture, std::span<const StatementId> premises)>;

/// The seed-fixed false dependencies of `conjecture`: up to `count` distinct
/// available non-positives in draw order.
std::vector<StatementId> fixed_negatives(const Corpus& corpus, StatementId conjecture, std::uint64_t seed,
                                         std::size_t count = kApproxNegatives);

struct ApproxAmrrReport {
  double value = 0.0;
  std::vector<double> per_conjecture;
  /// Negatives missing because the pool was too small, summed.
  std::size_t shortfall = 0;
  /// Value a perfect scorer would reach on the same candidates.
  double floor = 0.0;
};

/// Max relative rank of the positives among positives plus the fixed
/// negatives, averaged over `conjectures`. Equal scores are ordered by
/// chronological index. Throws NoPositives.
ApproxAmrrReport approx_amrr(const PairScorer& scorer, const Corpus& corpus, std::span<const StatementId> conjectures,
                             std::uint64_t seed, std::size_t negatives = kApproxNegatives);

/// Mean of the two score tables per (conjecture, premise), re-sorted with
/// chronological tie-break. Throws PairMismatch unless both tables cover the
/// same pairs.
std::vector<RankingResult> ensemble_scores(std::span<const RankingResult> a, std::span<const RankingResult> b,
                                           const Corpus& corpus);

/// |A ∩ B| / |A ∪ B|; two empty sets count as identical (1.0).
double jaccard(const std::set<std::string>& a, const std::set<std::string>& b);

struct ProvedSetStats {
  std::vector<std::string> methods;
  std::vector<std::size_t> counts;
  /// jaccard[i][j] between methods i and j.
  std::vector<std::vector<double>> jaccard;
  std::set<std::string> union_all;
};

ProvedSetStats proved_set_stats(const std::vector<std::pair<std::string, std::set<std::string>>>& proved);

/// Union of the proved sets of the listed methods.
std::set<std::string> union_of(const std::vector<std::pair<std::string, std::set<std::string>>>& proved,
                               std::span<const std::size_t> methods);

}  // namespace premsel::eval
