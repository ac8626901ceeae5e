#include "premsel/knn/knn.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include "premsel/error.hpp"

namespace premsel::knn {

KnnIndex::KnnIndex(const corpus::Corpus& corpus, std::span<const StatementId> neighbors)
    : corpus_(corpus), neighbors_(neighbors.begin(), neighbors.end()) {
  std::sort(neighbors_.begin(), neighbors_.end());
  std::unordered_map<std::string, std::size_t> ids;
  std::vector<std::size_t> df;
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> counts(corpus.size());
  for (StatementId s = 0; s < corpus.size(); ++s) {
    for (const auto& [feature, count] : extract_features(corpus[s])) {
      auto [it, inserted] = ids.emplace(feature, df.size());
      if (inserted) df.push_back(0);
      ++df[it->second];
      counts[s].emplace_back(it->second, count);
    }
  }
  const double n = static_cast<double>(corpus.size());
  vectors_.resize(corpus.size());
  for (StatementId s = 0; s < corpus.size(); ++s) {
    Vector& v = vectors_[s];
    for (const auto& [fid, count] : counts[s]) {
      const double w = static_cast<double>(count) * std::log(n / static_cast<double>(df[fid]));
      if (w == 0.0) continue;
      v.entries.emplace_back(fid, w);
      v.norm += w * w;
    }
    std::sort(v.entries.begin(), v.entries.end());
    v.norm = std::sqrt(v.norm);
  }
}

double KnnIndex::similarity(StatementId a, StatementId b) const {
  const Vector& x = vectors_.at(a);
  const Vector& y = vectors_.at(b);
  if (x.norm == 0.0 || y.norm == 0.0) return 0.0;
  double dot = 0.0;
  auto i = x.entries.begin();
  auto j = y.entries.begin();
  while (i != x.entries.end() && j != y.entries.end()) {
    if (i->first < j->first) {
      ++i;
    } else if (j->first < i->first) {
      ++j;
    } else {
      dot += i->second * j->second;
      ++i;
      ++j;
    }
  }
  return dot / (x.norm * y.norm);
}

std::vector<std::pair<StatementId, double>> KnnIndex::nearest(StatementId conjecture, std::size_t k) const {
  std::vector<std::pair<StatementId, double>> all;
  for (const StatementId n : neighbors_) {
    if (n != conjecture) all.emplace_back(n, similarity(conjecture, n));
  }
  const auto better = [](const auto& a, const auto& b) {
    return a.second != b.second ? a.second > b.second : a.first < b.first;
  };
  const std::size_t keep = std::min(k, all.size());
  std::partial_sort(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(keep), all.end(), better);
  all.resize(keep);
  return all;
}

RankingResult KnnIndex::rank(StatementId conjecture, std::size_t k) const {
  if (k == 0) throw UsageError("k-NN needs k >= 1");
  if (conjecture == 0) {
    throw DataError("EmptyPool", "no premises precede '" + corpus_[conjecture].name + "'");
  }
  std::vector<double> votes(conjecture, 0.0);
  for (const auto& [n, sim] : nearest(conjecture, k)) {
    for (const StatementId p : corpus_.positives(n)) {
      if (p < conjecture) votes[p] += sim;
    }
  }
  std::vector<StatementId> order(conjecture);
  for (StatementId i = 0; i < conjecture; ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](StatementId a, StatementId b) { return votes[a] > votes[b]; });
  RankingResult r;
  r.conjecture = corpus_[conjecture].name;
  r.premises.reserve(order.size());
  for (const StatementId p : order) r.premises.emplace_back(corpus_[p].name, votes[p]);
  return r;
}

}  // namespace premsel::knn
