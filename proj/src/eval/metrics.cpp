#include "premsel/eval/metrics.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <unordered_map>

#include "premsel/error.hpp"
#include "premsel/rng.hpp"

namespace premsel::eval {

namespace {

DataError missing(const std::string& conjecture, const std::string& what) {
  return DataError("MissingPremiseInRanking", "ranking of '" + conjecture + "': " + what);
}

}  // namespace

double max_relative_rank(const RankingResult& ranking, std::span<const std::string> positives, std::size_t pool_size) {
  if (pool_size == 0) throw missing(ranking.conjecture, "empty pool");
  std::unordered_map<std::string_view, std::size_t> position;
  for (std::size_t i = 0; i < ranking.premises.size(); ++i) position.emplace(ranking.premises[i].first, i + 1);
  std::size_t worst = 0;
  for (const std::string& p : positives) {
    const auto it = position.find(p);
    if (it == position.end()) throw missing(ranking.conjecture, "premise '" + p + "' not ranked");
    worst = std::max(worst, it->second);
  }
  return static_cast<double>(worst) / static_cast<double>(pool_size);
}

double amrr(std::span<const RankingResult> rankings, const Corpus& corpus) {
  if (rankings.empty()) return 0.0;
  double total = 0.0;
  for (const RankingResult& r : rankings) {
    const StatementId c = corpus.id_of(r.conjecture);
    if (r.premises.size() != c) {
      throw missing(r.conjecture, std::to_string(r.premises.size()) + " premises ranked, pool has " + std::to_string(c));
    }
    std::vector<std::string> positives;
    for (const StatementId p : corpus.positives(c)) positives.push_back(corpus[p].name);
    total += max_relative_rank(r, positives, c);
  }
  return total / static_cast<double>(rankings.size());
}

std::vector<StatementId> fixed_negatives(const Corpus& corpus, StatementId conjecture, std::uint64_t seed,
                                         std::size_t count) {
  const auto pos = corpus.positives(conjecture);
  std::vector<StatementId> pool;
  for (StatementId i = 0; i < conjecture; ++i) {
    if (!std::binary_search(pos.begin(), pos.end(), i)) pool.push_back(i);
  }
  Rng rng(derive_seed(seed, "negatives:" + corpus[conjecture].name));
  const auto picks = rng.sample_indices(pool.size(), std::min(count, pool.size()));
  std::vector<StatementId> out;
  out.reserve(picks.size());
  for (const std::size_t i : picks) out.push_back(pool[i]);
  return out;
}

ApproxAmrrReport approx_amrr(const PairScorer& scorer, const Corpus& corpus, std::span<const StatementId> conjectures,
                             std::uint64_t seed, std::size_t negatives) {
  ApproxAmrrReport report;
  if (conjectures.empty()) return report;
  for (const StatementId c : conjectures) {
    const auto pos = corpus.positives(c);
    if (pos.empty()) throw DataError("NoPositives", "'" + corpus[c].name + "' has no dependencies");
    std::vector<StatementId> candidates(pos.begin(), pos.end());
    const auto neg = fixed_negatives(corpus, c, seed, negatives);
    report.shortfall += negatives - neg.size();
    candidates.insert(candidates.end(), neg.begin(), neg.end());
    const std::vector<double> scores = scorer(c, candidates);
    if (scores.size() != candidates.size()) throw ShapeMismatch("scorer returned the wrong number of scores");

    std::vector<std::size_t> order(candidates.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      if (scores[a] != scores[b]) return scores[a] > scores[b];
      return candidates[a] < candidates[b];
    });
    std::size_t worst = 0;
    for (std::size_t rank = 0; rank < order.size(); ++rank) {
      if (order[rank] < pos.size()) worst = rank + 1;
    }
    const double n = static_cast<double>(candidates.size());
    report.per_conjecture.push_back(static_cast<double>(worst) / n);
    report.floor += static_cast<double>(pos.size()) / n;
  }
  const double m = static_cast<double>(conjectures.size());
  report.value = std::accumulate(report.per_conjecture.begin(), report.per_conjecture.end(), 0.0) / m;
  report.floor /= m;
  return report;
}

std::vector<RankingResult> ensemble_scores(std::span<const RankingResult> a, std::span<const RankingResult> b,
                                           const Corpus& corpus) {
  if (a.size() != b.size()) throw DataError("PairMismatch", "score tables cover different conjectures");
  std::vector<RankingResult> out;
  out.reserve(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].conjecture != b[i].conjecture) {
      throw DataError("PairMismatch", "conjecture '" + a[i].conjecture + "' vs '" + b[i].conjecture + "'");
    }
    std::map<std::string_view, double> other;
    for (const auto& [p, s] : b[i].premises) other.emplace(p, s);
    if (other.size() != a[i].premises.size()) {
      throw DataError("PairMismatch", "premise sets differ for '" + a[i].conjecture + "'");
    }
    std::vector<std::pair<StatementId, double>> merged;
    for (const auto& [p, s] : a[i].premises) {
      const auto it = other.find(p);
      if (it == other.end()) throw DataError("PairMismatch", "'" + p + "' missing for '" + a[i].conjecture + "'");
      merged.emplace_back(corpus.id_of(p), (s + it->second) / 2.0);
    }
    std::sort(merged.begin(), merged.end(), [](const auto& x, const auto& y) {
      return x.second != y.second ? x.second > y.second : x.first < y.first;
    });
    RankingResult r;
    r.conjecture = a[i].conjecture;
    for (const auto& [id, s] : merged) r.premises.emplace_back(corpus[id].name, s);
    out.push_back(std::move(r));
  }
  return out;
}

double jaccard(const std::set<std::string>& a, const std::set<std::string>& b) {
  if (a.empty() && b.empty()) return 1.0;
  std::size_t common = 0;
  for (const auto& x : a) common += b.count(x);
  return static_cast<double>(common) / static_cast<double>(a.size() + b.size() - common);
}

ProvedSetStats proved_set_stats(const std::vector<std::pair<std::string, std::set<std::string>>>& proved) {
  ProvedSetStats s;
  for (const auto& [name, set] : proved) {
    s.methods.push_back(name);
    s.counts.push_back(set.size());
    s.union_all.insert(set.begin(), set.end());
  }
  s.jaccard.assign(proved.size(), std::vector<double>(proved.size()));
  for (std::size_t i = 0; i < proved.size(); ++i) {
    for (std::size_t j = 0; j < proved.size(); ++j) s.jaccard[i][j] = jaccard(proved[i].second, proved[j].second);
  }
  return s;
}

std::set<std::string> union_of(const std::vector<std::pair<std::string, std::set<std::string>>>& proved,
                               std::span<const std::size_t> methods) {
  std::set<std::string> out;
  for (const std::size_t m : methods) out.insert(proved.at(m).second.begin(), proved.at(m).second.end());
  return out;
}

}  // namespace premsel::eval
