// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails. Each check compares library output against an oracle
// written here, independent of the library code paths.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>

#include "premsel/corpus/split.hpp"
#include "premsel/corpus/synth.hpp"
#include "premsel/error.hpp"
#include "premsel/eval/metrics.hpp"
#include "premsel/eval/prover.hpp"
#include "premsel/eval/sweep.hpp"
#include "premsel/fol/char_vocab.hpp"
#include "premsel/fol/statement.hpp"
#include "premsel/models/embedder.hpp"
#include "premsel/models/pair_model.hpp"
#include "premsel/models/ranking.hpp"
#include "premsel/ndt/ops.hpp"
#include "premsel/training/mining.hpp"
#include "premsel/training/trainer.hpp"
#include "support/formula_gen.hpp"
#include "support/gradcheck.hpp"
#include "support/helpers.hpp"

using namespace premsel;
using corpus::StatementId;
using testing::max_gradient_error;
using testing::random_projection;
using testing::random_tensor;
using testing::TempDir;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

double cpu_seconds() { return static_cast<double>(std::clock()) / CLOCKS_PER_SEC; }

std::string fmt(const char* pattern, double a) {
  char buf[64];
  std::snprintf(buf, sizeof buf, pattern, a);
  return buf;
}

corpus::Corpus synth(std::size_t n, std::size_t symbols, std::uint64_t seed) {
  corpus::SynthParams p;
  p.n_statements = n;
  p.n_symbols = symbols;
  p.seed = seed;
  return corpus::synth_corpus(p);
}

bool contains(std::span<const StatementId> xs, StatementId x) { return std::find(xs.begin(), xs.end(), x) != xs.end(); }

// ---------------------------------------------------------------- 1

Outcome parser_round_trip() {
  const auto start = std::chrono::steady_clock::now();
  const char* jordan =
      "fof(t99_jordan, axiom,  (! [A] :  ( (v1_topreal2(A) & m1_subset_1(A,\n"
      "k1_zfmisc_1(u1_struct_0(k15_euclid(2)))))  => v1_jordan1(A)) ) ).";
  using fol::Formula;
  using fol::Term;
  const Formula expected = Formula::quantified(
      fol::Quantifier::Forall, {"A"},
      Formula::binary(
          fol::Connective::Implies,
          Formula::binary(
              fol::Connective::And, Formula::atom("v1_topreal2", {Term::variable("A")}),
              Formula::atom("m1_subset_1",
                            {Term::variable("A"),
                             Term::function("k1_zfmisc_1",
                                            {Term::function("u1_struct_0",
                                                            {Term::function("k15_euclid", {Term::function("2")})})})})),
          Formula::atom("v1_jordan1", {Term::variable("A")})));
  const auto st = fol::parse(fol::lex(jordan));
  const auto again = fol::parse(fol::lex(fol::print_entry(st.name, st.role, st.formula)));
  if (!(st.formula == expected) || !(again.formula == st.formula) || again.name != st.name) {
    return {false, "Jordan entry did not round-trip"};
  }

  testing::RandomFormula gen(20240);
  const int total = 10000;
  int failures = 0;
  for (int i = 0; i < total; ++i) {
    const Formula f = gen.formula(1 + i % 6);
    const std::string text = fol::print_entry("f" + std::to_string(i), fol::Role::Axiom, f);
    try {
      if (!(fol::parse(fol::lex(text)).formula == f)) ++failures;
    } catch (const Error&) {
      ++failures;
    }
  }
  const double secs = seconds_since(start);
  return {failures == 0 && secs < 30,
          std::to_string(total) + " formulas, " + std::to_string(failures) + " failures, " + fmt("%.1fs", secs)};
}

// ---------------------------------------------------------------- 2

Outcome gradient_suite() {
  using ndt::Binder;
  using ndt::ParamStore;
  using ndt::Var;
  const auto start = std::chrono::steady_clock::now();
  const int instances = 100;
  std::map<std::string, double> worst;
  auto record = [&](const std::string& op, double err) { worst[op] = std::max(worst[op], err); };

  Rng rng(99);
  for (int i = 0; i < instances; ++i) {
    const std::uint64_t proj = rng.next();
    {
      const std::size_t m = 1 + rng.index(5), k = 1 + rng.index(5), n = 1 + rng.index(5);
      ParamStore<double> p{{"a", random_tensor(rng, {m, k})}, {"b", random_tensor(rng, {k, n})}};
      record("matmul", max_gradient_error(p, [&](Binder<double>& b) {
               return random_projection(b.tape(), ndt::matmul(b.tape(), b("a"), b("b")), proj);
             }));
    }
    {
      const std::size_t time = 3 + rng.index(8), in = 1 + rng.index(3), out = 1 + rng.index(3);
      const std::size_t width = 1 + rng.index(std::min<std::size_t>(time, 4)), stride = 1 + rng.index(2);
      ParamStore<double> p{{"x", random_tensor(rng, {time, in})}, {"k", random_tensor(rng, {width, in, out})}};
      record("conv1d", max_gradient_error(p, [&](Binder<double>& b) {
               return random_projection(b.tape(), ndt::conv1d(b.tape(), b("x"), b("k"), stride), proj);
             }));
    }
    {
      const std::size_t time = 1 + rng.index(8), ch = 1 + rng.index(4);
      ParamStore<double> p{{"x", random_tensor(rng, {time, ch})}};
      record("global_max_pool", max_gradient_error(p, [&](Binder<double>& b) {
               return random_projection(b.tape(), ndt::global_max_pool(b.tape(), b("x")), proj);
             }));
    }
    {
      const std::size_t in = 1 + rng.index(4), hidden = 1 + rng.index(4);
      ParamStore<double> p{{"x", random_tensor(rng, {1, in})},           {"h", random_tensor(rng, {1, hidden})},
                           {"c", random_tensor(rng, {1, hidden})},       {"wx", random_tensor(rng, {in, 4 * hidden})},
                           {"wh", random_tensor(rng, {hidden, 4 * hidden})}, {"b", random_tensor(rng, {4 * hidden})}};
      record("lstm_cell", max_gradient_error(p, [&](Binder<double>& b) {
               auto& t = b.tape();
               const auto s = ndt::lstm_cell(t, b("x"), {b("h"), b("c")}, b("wx"), b("wh"), b("b"));
               return ndt::add(t, random_projection(t, s.h, proj), random_projection(t, s.c, proj + 1));
             }));
    }
    {
      const std::size_t in = 1 + rng.index(4), hidden = 1 + rng.index(4);
      ParamStore<double> p{{"x", random_tensor(rng, {1, in})},
                           {"h", random_tensor(rng, {1, hidden})},
                           {"wx", random_tensor(rng, {in, 3 * hidden})},
                           {"wh", random_tensor(rng, {hidden, 3 * hidden})},
                           {"b", random_tensor(rng, {3 * hidden})}};
      record("gru_cell", max_gradient_error(p, [&](Binder<double>& b) {
               auto& t = b.tape();
               return random_projection(t, ndt::gru_cell(t, b("x"), b("h"), b("wx"), b("wh"), b("b")), proj);
             }));
    }
    {
      models::ModelConfig config = models::profile_config("char-cnn", models::Profile::Desk);
      config.embedder.embedding_dim = 1 + rng.index(4);
      config.classifier_hidden = 1 + rng.index(5);
      ParamStore<double> p = models::init_params<double>(config, rng.next());
      std::erase_if(p, [](const auto& kv) { return kv.first.rfind("cls/", 0) != 0; });
      for (auto& [name, t] : p) t = random_tensor(rng, t.shape(), 0.5);
      const std::size_t pairs = 1 + rng.index(4);
      p["conj"] = random_tensor(rng, {pairs, config.embedder.embedding_dim});
      p["axiom"] = random_tensor(rng, {pairs, config.embedder.embedding_dim});
      std::vector<double> labels;
      for (std::size_t j = 0; j < pairs; ++j) labels.push_back(rng.bernoulli(0.5) ? 1.0 : 0.0);
      record("classifier", max_gradient_error(p, [&](Binder<double>& b) {
               const Var z = models::classify<double>(b, config, b("conj"), b("axiom"));
               return ndt::bce_with_logits<double>(b.tape(), z, labels);
             }));
    }
  }
  const double secs = seconds_since(start);
  bool pass = secs < 120;
  std::string detail = std::to_string(instances) + " instances each; max rel err";
  for (const auto& [op, err] : worst) {
    pass = pass && err < 1e-4;
    detail += " " + op + "=" + fmt("%.1e", err);
  }
  return {pass, detail + ", " + fmt("%.1fs", secs)};
}

// ---------------------------------------------------------------- 3

/// Full-pool ranking with random coarse scores (ties exercised), sorted
/// descending with chronological tie-break.
RankingResult random_ranking(const corpus::Corpus& c, StatementId conj, Rng& rng) {
  std::vector<std::pair<double, StatementId>> scored;
  for (StatementId p = 0; p < conj; ++p) scored.emplace_back(std::floor(rng.uniform() * 6), p);
  std::sort(scored.begin(), scored.end(),
            [](auto& a, auto& b) { return a.first != b.first ? a.first > b.first : a.second < b.second; });
  RankingResult r{c[conj].name, {}};
  for (auto& [s, p] : scored) r.premises.emplace_back(c[p].name, s);
  return r;
}

/// 1-based position of the deepest positive.
std::size_t deepest_positive(const corpus::Corpus& c, const RankingResult& r) {
  const auto pos = c.positives(c.id_of(r.conjecture));
  std::size_t deepest = 0;
  for (std::size_t i = 0; i < r.premises.size(); ++i) {
    if (contains(pos, c.id_of(r.premises[i].first))) deepest = i + 1;
  }
  return deepest;
}

std::set<std::string> random_set(Rng& rng) {
  std::set<std::string> s;
  const std::size_t n = rng.index(12);
  for (std::size_t i = 0; i < n; ++i) s.insert("c" + std::to_string(rng.index(20)));
  return s;
}

Outcome metric_exactness() {
  const int instances = 50;
  int bad_amrr = 0, bad_approx = 0, bad_jaccard = 0, bad_ensemble = 0, bad_sweep = 0, bad_floor = 0;

  for (int inst = 0; inst < instances; ++inst) {
    const auto c = synth(60 + inst % 5 * 40, 10, 1000 + inst);
    Rng rng(7 * inst + 3);
    std::vector<RankingResult> rankings, others;
    for (const StatementId conj : c.provable()) {
      rankings.push_back(random_ranking(c, conj, rng));
      others.push_back(random_ranking(c, conj, rng));
    }

    // amrr: positional recount
    double expected = 0;
    for (const auto& r : rankings) {
      expected += static_cast<double>(deepest_positive(c, r)) / static_cast<double>(c.id_of(r.conjecture));
    }
    expected /= static_cast<double>(rankings.size());
    if (std::abs(eval::amrr(rankings, c) - expected) > 1e-9) ++bad_amrr;

    // approx_amrr: count strictly-better candidates per positive
    std::map<std::pair<StatementId, StatementId>, double> table;
    const eval::PairScorer scorer = [&](StatementId conj, std::span<const StatementId> premises) {
      std::vector<double> s;
      for (const StatementId p : premises) {
        auto [it, fresh] = table.try_emplace({conj, p}, 0.0);
        if (fresh) it->second = std::floor(rng.uniform() * 5);
        s.push_back(it->second);
      }
      return s;
    };
    const auto& conjectures = c.provable();
    const std::uint64_t neg_seed = inst + 1;
    const auto report = eval::approx_amrr(scorer, c, conjectures, neg_seed);
    double total = 0, floor = 0;
    for (const StatementId conj : conjectures) {
      std::vector<StatementId> cand(c.positives(conj).begin(), c.positives(conj).end());
      const auto neg = eval::fixed_negatives(c, conj, neg_seed);
      cand.insert(cand.end(), neg.begin(), neg.end());
      std::size_t worst = 0;
      for (const StatementId p : c.positives(conj)) {
        std::size_t rank = 1;
        for (const StatementId q : cand) {
          const double sq = table.at({conj, q}), sp = table.at({conj, p});
          if (sq > sp || (sq == sp && q < p)) ++rank;
        }
        worst = std::max(worst, rank);
      }
      total += static_cast<double>(worst) / static_cast<double>(cand.size());
      floor += static_cast<double>(c.positives(conj).size()) / static_cast<double>(cand.size());
    }
    const double n_conj = static_cast<double>(conjectures.size());
    if (std::abs(report.value - total / n_conj) > 1e-9) ++bad_approx;

    // a perfect ranker lands exactly on the floor
    const eval::PairScorer perfect = [&](StatementId conj, std::span<const StatementId> premises) {
      std::vector<double> s;
      for (const StatementId p : premises) s.push_back(contains(c.positives(conj), p) ? 1.0 : 0.0);
      return s;
    };
    const auto best = eval::approx_amrr(perfect, c, conjectures, neg_seed);
    if (best.value != best.floor || std::abs(best.floor - floor / n_conj) > 1e-12) ++bad_floor;

    // jaccard: set arithmetic
    const auto a = random_set(rng), b = random_set(rng);
    std::set<std::string> inter, uni;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::inserter(inter, inter.end()));
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::inserter(uni, uni.end()));
    const double j = uni.empty() ? 1.0 : static_cast<double>(inter.size()) / static_cast<double>(uni.size());
    if (eval::jaccard(a, b) != j || eval::jaccard(a, a) != 1.0) ++bad_jaccard;

    // ensemble: mean per pair, stable sort by mean over chronological order
    const auto merged = eval::ensemble_scores(rankings, others, c);
    for (std::size_t i = 0; i < rankings.size(); ++i) {
      const StatementId conj = c.id_of(rankings[i].conjecture);
      std::vector<double> mean(conj, 0.0);
      for (auto& [p, s] : rankings[i].premises) mean[c.id_of(p)] += s / 2;
      for (auto& [p, s] : others[i].premises) mean[c.id_of(p)] += s / 2;
      std::vector<StatementId> order(conj);
      std::iota(order.begin(), order.end(), StatementId{0});
      std::stable_sort(order.begin(), order.end(), [&](auto x, auto y) { return mean[x] > mean[y]; });
      bool same = merged[i].premises.size() == order.size();
      for (std::size_t k = 0; same && k < order.size(); ++k) {
        same = merged[i].premises[k].first == c[order[k]].name &&
               std::abs(merged[i].premises[k].second - mean[order[k]]) <= 1e-9;
      }
      if (!same) {
        ++bad_ensemble;
        break;
      }
    }

    // oracle sweep: minimum sufficient cutoff per conjecture
    const auto cutoffs = eval::default_cutoffs();
    const auto sweep = eval::cutoff_sweep(rankings, eval::oracle_prover(c), cutoffs);
    std::vector<std::size_t> cumulative(cutoffs.size(), 0);
    for (const auto& r : rankings) {
      const std::size_t deepest = deepest_positive(c, r);
      for (std::size_t k = 0; k < cutoffs.size(); ++k) cumulative[k] += deepest <= cutoffs[k];
    }
    if (sweep.cumulative != cumulative) ++bad_sweep;
  }
  const bool pass = bad_amrr + bad_approx + bad_jaccard + bad_ensemble + bad_sweep + bad_floor == 0;
  std::ostringstream out;
  out << instances << " instances each; mismatches amrr=" << bad_amrr << " approx_amrr=" << bad_approx
      << " jaccard=" << bad_jaccard << " ensemble=" << bad_ensemble << " sweep=" << bad_sweep
      << " floor=" << bad_floor;
  return {pass, out.str()};
}

// ---------------------------------------------------------------- 4

Outcome mining_rule() {
  const auto c = synth(150, 12, 5);
  const auto split = corpus::make_split(c, 0.2, 4, 5);
  const training::TrainingLabels labels(c, split);
  Rng rng(4242);
  const int trials = 1000;
  int failures = 0;
  for (int trial = 0; trial < trials; ++trial) {
    const StatementId conj = split.train[rng.index(split.train.size())];
    std::map<StatementId, double> scores;
    for (StatementId p = 0; p < conj; ++p) scores[p] = std::floor(rng.uniform() * 8) / 8;
    const training::PremiseScorer scorer = [&](StatementId, std::span<const StatementId> premises) {
      std::vector<double> s;
      for (const StatementId p : premises) s.push_back(scores.at(p));
      return s;
    };
    std::vector<StatementId> pool;
    for (const auto i : rng.sample_indices(conj, rng.index(conj + 1))) pool.push_back(static_cast<StatementId>(i));
    const std::size_t count = rng.index(10);

    // oracle: lowest-scoring negatives strictly above the weakest positive
    double weakest = 2.0;
    for (const StatementId p : c.positives(conj)) weakest = std::min(weakest, scores.at(p));
    std::set<StatementId> negatives;
    for (const StatementId p : pool) {
      if (!contains(c.positives(conj), p)) negatives.insert(p);
    }
    std::vector<std::pair<double, StatementId>> above;
    for (const StatementId p : negatives) {
      if (scores.at(p) > weakest) above.emplace_back(scores.at(p), p);
    }
    std::sort(above.begin(), above.end());
    std::vector<StatementId> expected;
    for (std::size_t i = 0; i < above.size() && i < count; ++i) expected.push_back(above[i].second);

    if (training::mine_negatives(scorer, labels, conj, pool, count) != expected) ++failures;
  }
  return {failures == 0, std::to_string(trials) + " trials, " + std::to_string(failures) + " mismatches"};
}

// ---------------------------------------------------------------- 5, 6, 7

constexpr std::uint64_t kCorpusSeed = 1;
constexpr std::size_t kTrainingSeeds = 4;
constexpr std::size_t kCutoff = 16;
constexpr std::uint64_t kEvalNegativeSeed = 99;

struct Measured {
  double approx_amrr = 0;
  std::size_t proved = 0;
  std::vector<RankingResult> rankings;
  std::set<std::string> proved_set;
};

Measured measure(const models::PairModel& model, const corpus::Corpus& c, const corpus::Split& split) {
  const auto inputs = model.encode_all(c);
  models::Scorer scorer(model, c, inputs);
  Measured m;
  const auto conjectures = split.evaluation();
  for (const StatementId id : conjectures) m.rankings.push_back(models::rank_premises(scorer, id));
  const std::vector<std::size_t> cutoffs{kCutoff};
  const auto report = eval::cutoff_sweep(m.rankings, eval::oracle_prover(c), cutoffs);
  m.proved = report.proved_within(kCutoff);
  m.proved_set = report.proved_set();
  const eval::PairScorer pairs = [&](StatementId conj, std::span<const StatementId> premises) {
    return scorer.logits(conj, premises);
  };
  m.approx_amrr = eval::approx_amrr(pairs, c, conjectures, kEvalNegativeSeed).value;
  return m;
}

struct SeedRun {
  Measured untrained, char_mined, char_plain, def_cnn;
  double char_cpu = 0;
};

std::string describe(const Measured& m) {
  return "p16=" + std::to_string(m.proved) + " aMRR=" + fmt("%.4f", m.approx_amrr);
}

std::vector<SeedRun> learning_runs(const corpus::Corpus& c, const corpus::Split& split) {
  std::vector<SeedRun> runs;
  for (std::uint64_t seed = 1; seed <= kTrainingSeeds; ++seed) {
    SeedRun run;
    const auto char_config = models::profile_config("char-cnn", models::Profile::Desk);
    const auto untrained =
        models::PairModel::initialize(char_config, fol::build_char_vocab(c.statements()), {}, seed);
    run.untrained = measure(untrained, c, split);

    auto tc = training::default_train_config(models::Profile::Desk);
    tc.seed = seed;
    const double cpu0 = cpu_seconds();
    const auto mined = training::train(untrained, c, split, tc);
    run.char_cpu = cpu_seconds() - cpu0;
    run.char_mined = measure(mined.model, c, split);

    auto plain_config = tc;
    plain_config.mining = false;
    run.char_plain = measure(training::train(untrained, c, split, plain_config).model, c, split);

    const auto def_config = models::profile_config("def-cnn", models::Profile::Desk);
    const auto def0 =
        models::PairModel::initialize(def_config, {}, models::build_word_vocab(mined.model, c, seed), seed);
    run.def_cnn = measure(training::train(def0, c, split, tc).model, c, split);

    std::printf("  seed %llu: untrained %s | char-cnn %s (%.0fs cpu) | no mining %s | def-cnn %s\n",
                static_cast<unsigned long long>(seed), describe(run.untrained).c_str(),
                describe(run.char_mined).c_str(), run.char_cpu, describe(run.char_plain).c_str(),
                describe(run.def_cnn).c_str());
    std::fflush(stdout);
    runs.push_back(std::move(run));
  }
  return runs;
}

Outcome learning_signal(const std::vector<SeedRun>& runs) {
  std::size_t ok = 0;
  std::string detail;
  for (std::size_t i = 0; i < runs.size(); ++i) {
    const auto& r = runs[i];
    const bool pass = r.char_mined.proved >= 2 * r.untrained.proved &&
                      r.char_mined.approx_amrr < r.untrained.approx_amrr &&
                      r.def_cnn.approx_amrr <= r.char_mined.approx_amrr && r.char_cpu <= 300;
    ok += pass;
    detail += (i ? " " : "") + std::string("seed") + std::to_string(i + 1) + (pass ? "=ok" : "=miss");
  }
  return {ok >= 3, std::to_string(ok) + "/" + std::to_string(runs.size()) + " seeds (" + detail + ")"};
}

Outcome mining_helps(const std::vector<SeedRun>& runs) {
  std::size_t ok = 0;
  std::string detail;
  for (std::size_t i = 0; i < runs.size(); ++i) {
    ok += runs[i].char_mined.proved >= runs[i].char_plain.proved;
    detail += (i ? " " : "") + std::to_string(runs[i].char_mined.proved) + "vs" +
              std::to_string(runs[i].char_plain.proved);
  }
  return {ok >= 3, std::to_string(ok) + "/" + std::to_string(runs.size()) + " seeds (p16 mined vs plain: " + detail + ")"};
}

Outcome ensemble_property(const corpus::Corpus& c, const SeedRun& run) {
  const auto merged = eval::ensemble_scores(run.char_mined.rankings, run.def_cnn.rankings, c);
  const std::vector<std::size_t> cutoffs{kCutoff};
  const auto ensemble = eval::cutoff_sweep(merged, eval::oracle_prover(c), cutoffs).proved_set();
  const std::vector<std::pair<std::string, std::set<std::string>>> proved{
      {"char-cnn", run.char_mined.proved_set}, {"def-cnn", run.def_cnn.proved_set}, {"ensemble", ensemble}};
  const auto stats = eval::proved_set_stats(proved);

  std::set<std::string> brute_union;
  bool counts_ok = true, jaccard_ok = true, superset_ok = true;
  for (std::size_t i = 0; i < proved.size(); ++i) {
    brute_union.insert(proved[i].second.begin(), proved[i].second.end());
    counts_ok = counts_ok && stats.counts[i] == proved[i].second.size();
    jaccard_ok = jaccard_ok && stats.jaccard[i][i] == 1.0;
    for (std::size_t j = 0; j < proved.size(); ++j) {
      std::size_t inter = 0;
      for (const auto& name : proved[i].second) inter += proved[j].second.count(name);
      const std::size_t uni = proved[i].second.size() + proved[j].second.size() - inter;
      const double expected = uni == 0 ? 1.0 : static_cast<double>(inter) / static_cast<double>(uni);
      jaccard_ok = jaccard_ok && std::abs(stats.jaccard[i][j] - expected) <= 1e-12;
    }
  }
  for (const auto& [name, set] : proved) {
    superset_ok = superset_ok && std::includes(stats.union_all.begin(), stats.union_all.end(), set.begin(), set.end());
  }
  const std::vector<std::size_t> pair{0, 1};
  const auto pair_union = eval::union_of(proved, pair);
  std::set<std::string> brute_pair = run.char_mined.proved_set;
  brute_pair.insert(run.def_cnn.proved_set.begin(), run.def_cnn.proved_set.end());

  const bool pass = stats.union_all == brute_union && pair_union == brute_pair && counts_ok && jaccard_ok &&
                    superset_ok && eval::jaccard(ensemble, ensemble) == 1.0;
  std::ostringstream out;
  out << "char=" << proved[0].second.size() << " def=" << proved[1].second.size() << " ensemble=" << ensemble.size()
      << " union=" << stats.union_all.size() << " char|def=" << pair_union.size()
      << " J(char,def)=" << fmt("%.3f", stats.jaccard[0][1]);
  return {pass, out.str()};
}

// ---------------------------------------------------------------- 8, 9

struct CliRun {
  int status = -1;
  std::string output;
};

CliRun cli(const std::string& args) {
  const std::string command = std::string(PREMSEL_CLI_PATH) + " " + args + " 2>&1";
  CliRun r;
  FILE* pipe = ::popen(command.c_str(), "r");
  if (!pipe) return r;
  char buf[4096];
  std::size_t n;
  while ((n = std::fread(buf, 1, sizeof buf, pipe)) > 0) r.output.append(buf, n);
  const int raw = ::pclose(pipe);
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return r;
}

std::string slurp(const fs::path& p) { return corpus::read_text_file(p); }

Outcome determinism() {
  TempDir dir("acceptance_det");
  const std::string a = (dir / "a").string(), b = (dir / "b").string();
  bool synth_ok = cli("synth --n 120 --seed 6 --out " + a).status == 0 &&
                  cli("synth --n 120 --seed 6 --out " + b).status == 0;
  for (const char* f : {"statements.p", "deps.txt", "defs.txt"}) {
    synth_ok = synth_ok && slurp(dir / "a" / f) == slurp(dir / "b" / f);
  }

  const auto c = synth(120, 20, 6);
  const bool split_ok = corpus::format_split(c, corpus::make_split(c, 0.2, 5, 9)) ==
                        corpus::format_split(c, corpus::make_split(c, 0.2, 5, 9));

  const std::string train = "train --corpus " + a +
                            " --method char-cnn --profile desk --steps 30 --monitor-every 10 --deterministic --seed 5 --out ";
  bool ckpt_ok = cli(train + (dir / "m1").string()).status == 0 && cli(train + (dir / "m2").string()).status == 0;
  ckpt_ok = ckpt_ok && slurp(dir / "m1" / "model.ckpt") == slurp(dir / "m2" / "model.ckpt") &&
            slurp(dir / "m1" / "split.txt") == slurp(dir / "m2" / "split.txt");
  std::string detail = std::string("checkpoints ") + (ckpt_ok ? "identical" : "differ") + ", splits " +
                       (split_ok ? "identical" : "differ") + ", corpora " + (synth_ok ? "identical" : "differ");
  return {ckpt_ok && split_ok && synth_ok, detail};
}

Outcome prover_shim() {
  TempDir dir("acceptance_prover");
  const auto c = synth(40, 6, 3);
  auto script = [&](const std::string& name, const std::string& body) {
    const auto path = dir / name;
    corpus::write_text_file(path, "#!/bin/sh\n" + body);
    fs::permissions(path, fs::perms::owner_all, fs::perm_options::add);
    return path;
  };
  eval::ProverLimits quick;
  quick.hard_seconds = 0.5;
  const std::string conj = c[c.provable().front()].name;
  const std::vector<std::string> premises;

  const auto proved = eval::external_prover(c, script("ok.sh", "echo '# SZS status Theorem'\n"), quick, dir.path());
  const auto failed =
      eval::external_prover(c, script("fail.sh", "echo '# SZS status CounterSatisfiable'\n"), quick, dir.path());
  const auto slow = eval::external_prover(c, script("slow.sh", "exec sleep 30\n"), quick, dir.path());
  const auto start = std::chrono::steady_clock::now();
  const bool statuses = proved(conj, premises) == eval::ProofStatus::Proved &&
                        failed(conj, premises) == eval::ProofStatus::Failed &&
                        slow(conj, premises) == eval::ProofStatus::Timeout;
  const double secs = seconds_since(start);

  corpus::write_corpus(c, corpus::CorpusPaths::in_directory(dir / "c"), "prover shim corpus");
  const auto dry =
      cli("prove --corpus " + (dir / "c").string() + " --conjecture " + conj + " --premises " +
          c[c.positives(c.provable().front()).front()].name + " --paper-limits --dry-run");
  const bool limits = dry.status == 0 &&
                      dry.output.find("--soft-cpu-limit=90 --cpu-limit=120 --memory-limit=4096 "
                                      "--processed-clauses-limit=500000") != std::string::npos;
  return {statuses && limits && secs < 10,
          std::string("stub proved/failed/timeout ") + (statuses ? "classified" : "misclassified") +
              fmt(" in %.1fs", secs) + ", --paper-limits " + (limits ? "90/120/4096/500000" : "wrong")};
}

}  // namespace

int main() {
  int failures = 0;
  auto run = [&](int number, const char* name, const std::function<Outcome()>& check) {
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failures += !o.pass;
    std::printf("%s %d %s: %s\n", o.pass ? "PASS" : "FAIL", number, name, o.detail.c_str());
    std::fflush(stdout);
  };

  run(1, "parser round trip", parser_round_trip);
  run(2, "gradient suite", gradient_suite);
  run(3, "metric exactness", metric_exactness);
  run(4, "negative mining rule", mining_rule);

  const auto c = synth(200, 30, kCorpusSeed);
  const auto split = corpus::make_split(c, 0.25, 8, kCorpusSeed);
  std::vector<SeedRun> runs;
  std::string setup_error;
  try {
    runs = learning_runs(c, split);
  } catch (const std::exception& e) {
    setup_error = std::string("exception: ") + e.what();
  }
  auto needs_runs = [&](std::function<Outcome()> check) {
    return [&, check]() -> Outcome { return runs.empty() ? Outcome{false, setup_error} : check(); };
  };
  run(5, "end-to-end learning signal", needs_runs([&] { return learning_signal(runs); }));
  run(6, "negative mining helps", needs_runs([&] { return mining_helps(runs); }));
  run(7, "ensemble and proved-set stats", needs_runs([&] { return ensemble_property(c, runs.front()); }));
  run(8, "determinism", determinism);
  run(9, "external prover shim", prover_shim);
  return failures == 0 ? 0 : 1;
}
