#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>

#include "premsel/corpus/split.hpp"
#include "premsel/corpus/synth.hpp"
#include "premsel/models/ranking.hpp"
#include "premsel/training/batch.hpp"
#include "premsel/training/mining.hpp"
#include "premsel/training/trainer.hpp"
#include "support/helpers.hpp"

using namespace premsel;
using namespace premsel::training;
using premsel::testing::error_kind;
using premsel::testing::TempDir;

namespace {

corpus::Corpus synth(std::size_t n, std::uint64_t seed = 2) {
  corpus::SynthParams p;
  p.n_statements = n;
  p.n_symbols = 12;
  p.seed = seed;
  return corpus::synth_corpus(p);
}

/// Brute force: filter by the lowest positive score, sort, truncate.
std::vector<StatementId> hard_negative_oracle(const std::vector<double>& pos,
                                              const std::vector<std::pair<StatementId, double>>& neg,
                                              std::size_t count) {
  if (pos.empty()) return {};
  double floor = pos[0];
  for (double s : pos) floor = s < floor ? s : floor;
  std::vector<std::pair<double, StatementId>> kept;
  for (auto [id, s] : neg) {
    if (s > floor) kept.emplace_back(s, id);
  }
  std::sort(kept.begin(), kept.end());
  std::vector<StatementId> out;
  for (std::size_t i = 0; i < kept.size() && i < count; ++i) out.push_back(kept[i].second);
  return out;
}

models::PairModel tiny_model(const corpus::Corpus& c, std::uint64_t seed = 1) {
  auto config = models::profile_config("char-cnn", models::Profile::Desk);
  config.embedder.channels = 8;
  config.embedder.embedding_dim = 8;
  config.classifier_hidden = 8;
  return models::PairModel::initialize(config, fol::build_char_vocab(c.statements()), {}, seed);
}

TrainConfig quick_config(std::size_t steps) {
  TrainConfig t = default_train_config(models::Profile::Desk);
  t.steps = steps;
  t.batch_size = 16;
  t.mine_every = 5;
  t.mining_conjectures = 4;
  t.mining_candidates = 16;
  t.monitor_every = 10;
  t.monitor_negatives = 16;
  return t;
}

}  // namespace

TEST_CASE("hard negative rule examples") {
  const std::vector<double> pos{0.3, 0.7};
  const std::vector<std::pair<StatementId, double>> neg{{1, 0.9}, {2, 0.5}, {3, 0.2}};
  CHECK(select_hard_negatives(pos, neg, 2) == std::vector<StatementId>{2, 1});
  CHECK(select_hard_negatives(pos, neg, 1) == std::vector<StatementId>{2});
  const std::vector<std::pair<StatementId, double>> low{{1, 0.1}, {2, 0.3}};
  CHECK(select_hard_negatives(pos, low, 5).empty());
  CHECK(select_hard_negatives({}, neg, 5).empty());
  // equal scores fall back to index order
  const std::vector<std::pair<StatementId, double>> tied{{9, 0.5}, {4, 0.5}, {6, 0.4}};
  CHECK(select_hard_negatives(pos, tied, 3) == std::vector<StatementId>{6, 4, 9});
}

TEST_CASE("hard negative rule matches brute force") {
  Rng rng(42);
  for (int trial = 0; trial < 1000; ++trial) {
    std::vector<double> pos(1 + rng.index(4));
    for (double& s : pos) s = std::floor(rng.uniform() * 10) / 10;
    std::vector<std::pair<StatementId, double>> neg;
    const auto ids = rng.sample_indices(200, rng.index(40));
    for (const auto id : ids) neg.emplace_back(id, std::floor(rng.uniform() * 10) / 10);
    const std::size_t count = rng.index(12);
    CHECK(select_hard_negatives(pos, neg, count) == hard_negative_oracle(pos, neg, count));
  }
}

TEST_CASE("label guard and mining over a scorer") {
  const auto c = synth(80);
  const auto split = corpus::make_split(c, 0.3, 3, 5);
  const TrainingLabels labels(c, split);
  const StatementId test_conj = split.test.front();
  CHECK(error_kind([&] { labels.positives(test_conj); }) == "LabelLeak");
  CHECK(error_kind([&] { labels.is_positive(test_conj, 0); }) == "LabelLeak");

  const StatementId conj = split.train.back();
  const auto pos = labels.positives(conj);
  // score = premise index; positives are pinned to the middle
  std::vector<StatementId> seen;
  const PremiseScorer scorer = [&](StatementId, std::span<const StatementId> premises) {
    std::vector<double> s;
    for (const StatementId p : premises) {
      seen.push_back(p);
      s.push_back(std::binary_search(pos.begin(), pos.end(), p) ? 20.0 : static_cast<double>(p));
    }
    return s;
  };
  std::vector<StatementId> pool;
  for (StatementId p = 0; p < c.size(); ++p) pool.push_back(p);
  const auto mined = mine_negatives(scorer, labels, conj, pool, 3);
  // The three lowest non-positives above 20, i.e. the first such ids past 20.
  std::vector<StatementId> expect;
  for (StatementId p = 21; p < conj && expect.size() < 3; ++p) {
    if (!std::binary_search(pos.begin(), pos.end(), p)) expect.push_back(p);
  }
  CHECK(mined == expect);
  for (const StatementId p : seen) CHECK(p < conj);

  corpus::Split all_train = split;
  all_train.train.clear();
  for (StatementId i = 0; i < c.size(); ++i) all_train.train.push_back(i);
  const TrainingLabels loose(c, all_train);
  StatementId no_deps = 0;
  while (c.has_deps(no_deps)) ++no_deps;
  CHECK(error_kind([&] { mine_negatives(scorer, loose, no_deps, pool, 3); }) == "NoPositives");
}

TEST_CASE("mined pairs beat the lowest positive of the mining snapshot") {
  const auto c = synth(90);
  const auto split = corpus::make_split(c, 0.2, 2, 1);
  const TrainingLabels labels(c, split);
  const auto model = tiny_model(c, 3);
  const auto inputs = model.encode_all(c);
  models::Scorer scorer(model, c, inputs);
  const PremiseScorer score = [&](StatementId conj, std::span<const StatementId> p) { return scorer.logits(conj, p); };
  for (const StatementId conj : split.train) {
    std::vector<StatementId> pool(conj);
    for (StatementId i = 0; i < conj; ++i) pool[i] = i;
    const auto pos = labels.positives(conj);
    const std::vector<StatementId> pos_ids(pos.begin(), pos.end());
    const auto pos_scores = scorer.logits(conj, pos_ids);
    const double floor = *std::min_element(pos_scores.begin(), pos_scores.end());
    const auto mined = mine_negatives(score, labels, conj, pool, 5);
    for (const StatementId m : mined) {
      CHECK_FALSE(labels.is_positive(conj, m));
      const StatementId one[] = {m};
      CHECK(scorer.logits(conj, one)[0] > floor);
    }
  }
}

TEST_CASE("negative queue") {
  const auto c = synth(60);
  const auto split = corpus::make_split(c, 0.2, 1, 1);
  const TrainingLabels labels(c, split);
  NegativeQueue q(labels, 3);
  const StatementId conj = split.train.back();
  const auto pos = labels.positives(conj);
  CHECK_FALSE(q.push({conj, pos.front()}));
  CHECK_FALSE(q.push({conj, conj}));
  std::vector<StatementId> negatives;
  for (StatementId p = 0; p < conj && negatives.size() < 5; ++p) {
    if (!labels.is_positive(conj, p)) negatives.push_back(p);
  }
  for (const StatementId n : negatives) CHECK(q.push({conj, n}));
  CHECK(q.size() == 3);
  const std::vector<MinedPair> expect{{conj, negatives[2]}, {conj, negatives[3]}, {conj, negatives[4]}};
  CHECK(q.contents() == expect);
  Rng rng(1);
  std::map<StatementId, int> hits;
  for (int i = 0; i < 300; ++i) ++hits[q.sample(rng).premise];
  CHECK(hits.size() == 3);
  CHECK(error_kind([&] { NegativeQueue(labels, 0); }) == "UsageError");
  NegativeQueue empty(labels, 2);
  CHECK(error_kind([&] { empty.sample(rng); }) == "EmptyQueue");
}

TEST_CASE("batch composition") {
  Rng rng(3);
  const auto full = batch_composition(128, 0.25, false, rng);
  CHECK(full.mined == 32);
  CHECK(full.positive == 48);
  CHECK(full.random_negative == 48);
  const auto empty = batch_composition(128, 0.25, true, rng);
  CHECK(empty.mined == 0);
  CHECK(empty.positive == 64);
  CHECK(empty.random_negative == 64);
  const auto odd = batch_composition(7, 0.0, false, rng);
  CHECK(odd.positive == 4);
  CHECK(odd.random_negative == 3);
  CHECK(error_kind([&] { batch_composition(8, 1.5, false, rng); }) == "UsageError");
}

TEST_CASE("batches respect the split, labels and the mined ratio") {
  const auto c = synth(120);
  const auto split = corpus::make_split(c, 0.25, 4, 2);
  const TrainingLabels labels(c, split);
  NegativeQueue queue(labels, 64);
  for (const StatementId conj : split.train) {
    for (StatementId p = 0; p < conj && queue.size() < 64; p += 7) queue.push({conj, p});
  }
  REQUIRE(queue.size() == 64);
  Rng rng(9);
  std::size_t mined = 0, total = 0;
  for (int b = 0; b < 10000; ++b) {
    const auto batch = make_batch(labels, queue, 50, 0.25, rng);
    REQUIRE(batch.size() == 50);
    total += batch.size();
    for (const auto& e : batch) {
      mined += e.provenance == Provenance::MinedNegative;
      if (b < 200) {
        CHECK(labels.is_train(e.conjecture));
        CHECK(e.premise < e.conjecture);
        CHECK((e.label == 1.0f) == labels.is_positive(e.conjecture, e.premise));
        CHECK((e.label == 1.0f) == (e.provenance == Provenance::Positive));
      }
    }
  }
  const double fraction = static_cast<double>(mined) / static_cast<double>(total);
  CHECK(std::abs(fraction - 0.25) < 0.02);

  NegativeQueue none(labels, 8);
  const auto fallback = make_batch(labels, none, 128, 0.25, rng);
  CHECK(std::count_if(fallback.begin(), fallback.end(), [](auto& e) { return e.label == 1.0f; }) == 64);
}

TEST_CASE("zero learning rate leaves weights alone") {
  const auto c = synth(70);
  const auto split = corpus::make_split(c, 0.2, 3, 1);
  const auto model = tiny_model(c);
  auto config = quick_config(12);
  config.learning_rate = 0.0;
  const auto result = train(model, c, split, config);
  CHECK(ndt::params_checksum(result.model.params()) == ndt::params_checksum(model.params()));
  CHECK(ndt::params_checksum(result.model.shadows()) == ndt::params_checksum(model.params()));
  CHECK(result.history.front().step == 0);
  CHECK_FALSE(result.history.front().loss.has_value());
  CHECK(result.history.back().step == 12);
}

TEST_CASE("deterministic training is bit-identical") {
  const auto c = synth(70);
  const auto split = corpus::make_split(c, 0.2, 3, 1);
  const auto config = quick_config(25);
  TempDir dir("train");
  models::save_model(train(tiny_model(c), c, split, config).model, dir / "a.ckpt");
  models::save_model(train(tiny_model(c), c, split, config).model, dir / "b.ckpt");
  CHECK(corpus::read_text_file(dir / "a.ckpt") == corpus::read_text_file(dir / "b.ckpt"));

  auto other = config;
  other.seed = 2;
  models::save_model(train(tiny_model(c), c, split, other).model, dir / "c.ckpt");
  CHECK(corpus::read_text_file(dir / "a.ckpt") != corpus::read_text_file(dir / "c.ckpt"));
}

TEST_CASE("best monitored step is kept") {
  const auto c = synth(70);
  const auto split = corpus::make_split(c, 0.2, 3, 1);
  std::vector<MonitorRecord> seen;
  const auto result = train(tiny_model(c), c, split, quick_config(30), [&](const MonitorRecord& r) { seen.push_back(r); });
  REQUIRE(seen.size() == 4);
  double best = seen[0].approx_amrr;
  for (const auto& r : seen) best = std::min(best, r.approx_amrr);
  CHECK(result.best_monitor == best);
  const auto inputs = result.model.encode_all(c);
  CHECK(monitor_value(result.model, c, inputs, split.monitor, derive_seed(1, "monitor"), 16) == doctest::Approx(best));
  CHECK(result.model.meta()["best_step"] == result.best_step);
  CHECK(format_monitor_log(seen).rfind("step loss approx_amrr\n0 - ", 0) == 0);
}

TEST_CASE("threaded miner fills the queue") {
  const auto c = synth(70);
  const auto split = corpus::make_split(c, 0.2, 3, 1);
  auto config = quick_config(30);
  config.deterministic = false;
  config.jobs = 2;
  const auto result = train(tiny_model(c), c, split, config);
  CHECK(result.history.back().step == 30);
  CHECK(result.model.meta()["mined_pairs"] == result.mined_pairs);
}

TEST_CASE("non-finite loss raises divergence") {
  const auto c = synth(60);
  const auto split = corpus::make_split(c, 0.2, 2, 1);
  auto model = tiny_model(c);
  model.params().at("cls/b2")[0] = std::nanf("");
  auto config = quick_config(5);
  config.mining = false;
  CHECK(error_kind([&] { train(model, c, split, config); }) == "DivergenceError");
}
