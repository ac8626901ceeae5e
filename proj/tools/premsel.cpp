// premsel: corpus tools, training, ranking and evaluation in one binary.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "premsel/corpus/corpus.hpp"
#include "premsel/corpus/split.hpp"
#include "premsel/corpus/stats.hpp"
#include "premsel/corpus/synth.hpp"
#include "premsel/error.hpp"
#include "premsel/eval/metrics.hpp"
#include "premsel/eval/prover.hpp"
#include "premsel/eval/ranking_io.hpp"
#include "premsel/eval/sweep.hpp"
#include "premsel/knn/knn.hpp"
#include "premsel/models/pair_model.hpp"
#include "premsel/models/ranking.hpp"
#include "premsel/ndt/checkpoint.hpp"
#include "premsel/training/trainer.hpp"

namespace fs = std::filesystem;
using namespace premsel;

namespace {

constexpr const char* kSplitFile = "split.txt";
constexpr const char* kModelFile = "model.ckpt";
constexpr const char* kMonitorFile = "monitor.log";
constexpr const char* kRankingsFile = "rankings.txt";
constexpr const char* kReportFile = "report.json";

struct CommonOptions {
  std::uint64_t seed = 1;
  std::size_t jobs = 1;
  bool deterministic = false;
  std::string out;
};

void add_common(CLI::App* cmd, CommonOptions& o, bool needs_out) {
  cmd->add_option("--seed", o.seed, "Random seed");
  cmd->add_option("--jobs", o.jobs, "Upper bound on worker threads")->check(CLI::PositiveNumber);
  cmd->add_flag("--deterministic", o.deterministic, "Single-threaded, bit-reproducible run");
  auto* out = cmd->add_option("--out", o.out, "Output directory");
  if (needs_out) out->required();
}

fs::path out_dir(const CommonOptions& o) {
  fs::create_directories(o.out);
  return o.out;
}

struct SplitOptions {
  std::string file;
  double test_fraction = 0.1;
  std::size_t monitor = 5;
  std::optional<std::uint64_t> seed;
};

void add_split_options(CLI::App* cmd, SplitOptions& s) {
  cmd->add_option("--split", s.file, "Existing split file (name train|test|monitor per line)");
  cmd->add_option("--test-fraction", s.test_fraction, "Share of provable conjectures held out");
  cmd->add_option("--monitor", s.monitor, "Held-out conjectures used for monitoring");
  cmd->add_option("--split-seed", s.seed, "Split seed (defaults to --seed)");
}

corpus::Split resolve_split(const corpus::Corpus& c, const SplitOptions& s, std::uint64_t seed) {
  if (!s.file.empty()) return corpus::parse_split(c, corpus::read_text_file(s.file));
  return corpus::make_split(c, s.test_fraction, s.monitor, s.seed.value_or(seed));
}

std::vector<corpus::StatementId> pick_conjectures(const corpus::Corpus& c, const corpus::Split& split,
                                                  const std::string& set) {
  if (set == "evaluation") return split.evaluation();
  if (set == "test") return split.test;
  if (set == "monitor") return split.monitor;
  if (set == "train") return split.train;
  if (set == "all") return c.provable();
  throw UsageError("unknown conjecture set '" + set + "'");
}

std::string join(const std::vector<std::string>& parts, const char* sep = " ") {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? sep : "") + parts[i];
  return out;
}

// ---- subcommands ----

struct IngestOptions {
  std::string statements, deps, defs;
};

int run_ingest(const IngestOptions& o, const CommonOptions& common) {
  corpus::CorpusPaths paths{o.statements, o.deps, o.defs};
  const corpus::Corpus c = corpus::load_corpus(paths);
  const fs::path dir = out_dir(common);
  corpus::write_corpus(c, corpus::CorpusPaths::in_directory(dir), "ingested from " + o.statements);
  std::printf("statements %zu\nconjectures_with_deps %zu\ndefinitions %zu\n", c.size(), c.provable().size(),
              c.defines().size());
  return 0;
}

int run_stats(const std::string& corpus_dir, bool json) {
  const corpus::Corpus c = corpus::load_corpus(corpus::CorpusPaths::in_directory(corpus_dir));
  const auto report = corpus::corpus_stats(c);
  if (!json) {
    std::fputs(corpus::format_stats(report).c_str(), stdout);
    return 0;
  }
  const auto hist = [](const corpus::Histogram& h) {
    nlohmann::json j = nlohmann::json::object();
    for (const auto& [k, v] : h) j[std::to_string(k)] = v;
    return j;
  };
  const nlohmann::json j = {{"statements", report.statements},
                            {"char_lengths", hist(report.char_lengths)},
                            {"token_lengths", hist(report.token_lengths)},
                            {"word_occurrences", hist(report.word_occurrences)},
                            {"distinct_words", report.distinct_words},
                            {"dependency_counts", hist(report.dependency_counts)},
                            {"rare_word_fraction", report.rare_word_fraction}};
  std::printf("%s\n", j.dump(2).c_str());
  return 0;
}

struct SynthOptions {
  std::size_t n = 200;
  std::size_t symbols = 30;
  std::string dep_model = "shared-symbol";
};

int run_synth(const SynthOptions& o, const CommonOptions& common) {
  corpus::SynthParams params;
  params.n_statements = o.n;
  params.n_symbols = o.symbols;
  params.seed = common.seed;
  params.dep_model = corpus::parse_dep_model(o.dep_model);
  const corpus::Corpus c = corpus::write_synth_corpus(params, out_dir(common));
  std::printf("statements %zu\nconjectures_with_deps %zu\n", c.size(), c.provable().size());
  return 0;
}

struct TrainOptions {
  std::string corpus_dir;
  std::string method = "char-cnn";
  std::string profile = "desk";
  std::string stage1;
  std::optional<std::size_t> steps, batch_size, monitor_every;
  std::optional<double> learning_rate;
  bool no_mining = false;
  SplitOptions split;
};

int run_train(const TrainOptions& o, const CommonOptions& common) {
  const corpus::Corpus c = corpus::load_corpus(corpus::CorpusPaths::in_directory(o.corpus_dir));
  const corpus::Split split = resolve_split(c, o.split, common.seed);
  const models::Profile profile = models::parse_profile(o.profile);
  models::ModelConfig config = models::profile_config(o.method, profile);

  models::WordVocab words(config.input_dim, derive_seed(common.seed, "words"));
  if (config.word_source == models::WordSource::Definitions) {
    if (o.stage1.empty()) throw UsageError("method '" + o.method + "' needs --stage1 <checkpoint>");
    const models::PairModel stage1 = models::load_model(o.stage1);
    words = models::build_word_vocab(stage1, c, derive_seed(common.seed, "words"));
    config.input_dim = words.dim();
  }
  const fol::CharVocab chars = fol::build_char_vocab(c.statements());
  models::PairModel model = models::PairModel::initialize(config, chars, words, common.seed);

  training::TrainConfig tc = training::default_train_config(profile);
  tc.seed = common.seed;
  tc.deterministic = common.deterministic;
  tc.jobs = common.deterministic ? 1 : common.jobs;
  tc.mining = !o.no_mining;
  if (o.steps) tc.steps = *o.steps;
  if (o.batch_size) tc.batch_size = *o.batch_size;
  if (o.monitor_every) tc.monitor_every = *o.monitor_every;
  if (o.learning_rate) tc.learning_rate = *o.learning_rate;

  const fs::path dir = out_dir(common);
  corpus::write_text_file(dir / kSplitFile, corpus::format_split(c, split));
  auto result = training::train(std::move(model), c, split, tc, [](const training::MonitorRecord& r) {
    if (r.loss) {
      std::fprintf(stderr, "step %zu loss %.4f approx_amrr %.4f\n", r.step, *r.loss, r.approx_amrr);
    } else {
      std::fprintf(stderr, "step %zu approx_amrr %.4f\n", r.step, r.approx_amrr);
    }
  });
  result.model.meta()["method"] = o.method;
  models::save_model(result.model, dir / kModelFile);
  corpus::write_text_file(dir / kMonitorFile, training::format_monitor_log(result.history));
  std::printf("best_step %zu\nbest_approx_amrr %.6f\ncheckpoint %s\n", result.best_step, result.best_monitor,
              (dir / kModelFile).c_str());
  return 0;
}

struct RankOptions {
  std::string corpus_dir;
  std::string method = "knn";
  std::string model;
  std::string set = "evaluation";
  std::string cache;
  std::size_t k = 40;
  SplitOptions split;
};

int run_rank(const RankOptions& o, const CommonOptions& common) {
  const corpus::Corpus c = corpus::load_corpus(corpus::CorpusPaths::in_directory(o.corpus_dir));
  const corpus::Split split = resolve_split(c, o.split, common.seed);
  const auto conjectures = pick_conjectures(c, split, o.set);
  std::vector<RankingResult> rankings;
  if (o.method == "knn") {
    const knn::KnnIndex index(c, split.train);
    for (const auto id : conjectures) rankings.push_back(index.rank(id, o.k));
  } else {
    if (o.model.empty()) throw UsageError("--model is required for method '" + o.method + "'");
    const models::PairModel model = models::load_model(o.model);
    const std::string trained = model.meta().value("method", std::string());
    if (!trained.empty() && trained != o.method) {
      throw UsageError("checkpoint was trained as '" + trained + "', not '" + o.method + "'");
    }
    const auto inputs = model.encode_all(c);
    std::optional<models::EmbeddingCache> cache;
    if (!o.cache.empty() && fs::exists(o.cache)) {
      cache.emplace(models::EmbeddingCache::from_bundle(ndt::load_bundle(o.cache)));
      if (cache->checksum() != model.checksum()) cache.reset();
    }
    if (!cache) cache.emplace(model.checksum());
    models::Scorer scorer(model, c, inputs, model.shadows(), *cache);
    for (const auto id : conjectures) rankings.push_back(models::rank_premises(scorer, id));
    if (!o.cache.empty()) ndt::save_bundle(cache->to_bundle(), o.cache);
  }
  const fs::path dir = out_dir(common);
  eval::write_rankings(dir / kRankingsFile, rankings);
  std::printf("conjectures %zu\nrankings %s\n", rankings.size(), (dir / kRankingsFile).c_str());
  return 0;
}

struct ProverOptions {
  std::string prover = "oracle";
  std::string command = "eprover";
  bool paper_limits = false;
  std::optional<double> soft_seconds, hard_seconds;
  std::optional<std::size_t> memory_mb, processed_clauses;

  eval::ProverLimits limits() const {
    eval::ProverLimits l = paper_limits ? eval::paper_limits() : eval::ProverLimits{};
    if (soft_seconds) l.soft_cpu_seconds = *soft_seconds;
    if (hard_seconds) l.hard_seconds = *hard_seconds;
    if (memory_mb) l.memory_mb = *memory_mb;
    if (processed_clauses) l.processed_clauses = *processed_clauses;
    return l;
  }
};

void add_prover_options(CLI::App* cmd, ProverOptions& p, bool with_kind) {
  if (with_kind) {
    cmd->add_option("--prover", p.prover, "oracle or external")->check(CLI::IsMember({"oracle", "external"}));
  }
  cmd->add_option("--prover-cmd", p.command, "Prover executable (E-style flags)");
  cmd->add_flag("--paper-limits", p.paper_limits, "90 s soft, 120 s hard, 4 GB, 500000 processed clauses");
  cmd->add_option("--soft-limit", p.soft_seconds, "Soft CPU limit in seconds");
  cmd->add_option("--hard-limit", p.hard_seconds, "Hard limit in seconds");
  cmd->add_option("--memory-limit", p.memory_mb, "Memory limit in MB");
  cmd->add_option("--clause-limit", p.processed_clauses, "Processed clauses limit");
}

struct EvalOptions {
  std::string corpus_dir;
  std::vector<std::string> rankings;
  std::vector<std::string> names;
  std::vector<std::size_t> cutoffs;
  bool ensemble = false;
  ProverOptions prover;
};

int run_eval(const EvalOptions& o, const CommonOptions& common) {
  const corpus::Corpus c = corpus::load_corpus(corpus::CorpusPaths::in_directory(o.corpus_dir));
  if (!o.names.empty() && o.names.size() != o.rankings.size()) {
    throw UsageError("--names must match --rankings one to one");
  }
  std::vector<std::pair<std::string, std::vector<RankingResult>>> methods;
  for (std::size_t i = 0; i < o.rankings.size(); ++i) {
    methods.emplace_back(o.names.empty() ? fs::path(o.rankings[i]).parent_path().filename().string() : o.names[i],
                         eval::read_rankings(o.rankings[i]));
    if (methods.back().first.empty()) methods.back().first = "method" + std::to_string(i + 1);
  }
  if (o.ensemble) {
    if (methods.size() != 2) throw UsageError("--ensemble needs exactly two ranking files");
    methods.emplace_back(methods[0].first + "+" + methods[1].first,
                         eval::ensemble_scores(methods[0].second, methods[1].second, c));
  }

  const fs::path dir = out_dir(common);
  eval::Prover prover = o.prover.prover == "oracle"
                            ? eval::oracle_prover(c)
                            : eval::external_prover(c, o.prover.command, o.prover.limits(), dir / "problems");
  const std::vector<std::size_t> cutoffs = o.cutoffs.empty() ? eval::default_cutoffs() : o.cutoffs;
  const std::size_t jobs = common.deterministic ? 1 : common.jobs;

  nlohmann::json report = nlohmann::json::object();
  std::vector<std::pair<std::string, std::set<std::string>>> proved;
  for (const auto& [name, rankings] : methods) {
    const auto sweep = eval::cutoff_sweep(rankings, prover, cutoffs, jobs);
    nlohmann::json entry = eval::report_json(sweep);
    std::optional<double> amrr;
    try {
      amrr = eval::amrr(rankings, c);
    } catch (const DataError&) {
      // partial rankings: aMRR is undefined
    }
    entry["amrr"] = amrr ? nlohmann::json(*amrr) : nlohmann::json(nullptr);
    report["methods"][name] = entry;
    proved.emplace_back(name, sweep.proved_set());
    std::printf("== %s (%zu conjectures)%s\n", name.c_str(), sweep.total,
                amrr ? (" amrr " + std::to_string(*amrr)).c_str() : "");
    std::fputs(eval::format_report(sweep).c_str(), stdout);
  }
  const auto stats = eval::proved_set_stats(proved);
  report["jaccard"] = {{"methods", stats.methods}, {"matrix", stats.jaccard}};
  report["union_proved"] = stats.union_all.size();
  std::printf("== jaccard\n");
  for (std::size_t i = 0; i < stats.methods.size(); ++i) {
    std::printf("%s", stats.methods[i].c_str());
    for (const double v : stats.jaccard[i]) std::printf(" %.4f", v);
    std::printf("\n");
  }
  std::printf("union_proved %zu\n", stats.union_all.size());
  corpus::write_text_file(dir / kReportFile, report.dump(2) + "\n");
  return 0;
}

struct ProveOptions {
  std::string corpus_dir;
  std::string conjecture;
  std::vector<std::string> premises;
  std::string rankings;
  std::size_t k = 16;
  bool dry_run = false;
  ProverOptions prover;
};

int run_prove(const ProveOptions& o, const CommonOptions& common) {
  const corpus::Corpus c = corpus::load_corpus(corpus::CorpusPaths::in_directory(o.corpus_dir));
  c.id_of(o.conjecture);
  std::vector<std::string> premises = o.premises;
  if (!o.rankings.empty()) {
    for (const auto& r : eval::read_rankings(o.rankings)) {
      if (r.conjecture != o.conjecture) continue;
      for (std::size_t i = 0; i < r.premises.size() && i < o.k; ++i) premises.push_back(r.premises[i].first);
    }
  }
  const eval::ProverLimits limits = o.prover.limits();
  const std::string problem = eval::problem_text(c, o.conjecture, premises);
  std::vector<std::string> argv{o.prover.command};
  for (const auto& a : eval::e_prover_arguments(limits)) argv.push_back(a);
  argv.push_back("<problem.p>");
  if (o.dry_run) {
    std::printf("invocation: %s\n%s", join(argv).c_str(), problem.c_str());
    return 0;
  }
  const fs::path dir = common.out.empty() ? fs::temp_directory_path() / "premsel_problems" : out_dir(common);
  const auto run = eval::run_prover(o.prover.command, eval::e_prover_arguments(limits), problem, limits.hard_seconds, dir);
  std::printf("invocation: %s\nstatus %s\n", join(run.argv).c_str(), eval::status_name(run.status));
  return 0;
}

int exit_code(ErrorCategory category) {
  switch (category) {
    case ErrorCategory::Usage:
      return 2;
    case ErrorCategory::Data:
      return 3;
    case ErrorCategory::Compute:
      return 4;
  }
  return 1;
}

void report_error(const char* category, const std::string& kind, const std::string& message) {
  std::string line = message;
  for (char& ch : line) {
    if (ch == '\n') ch = ' ';
  }
  std::fprintf(stderr, "error[%s]: %s: %s\n", category, kind.c_str(), line.c_str());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Premise selection for first-order theorem proving"};
  app.require_subcommand(1);
  CommonOptions common;

  IngestOptions ingest;
  auto* ingest_cmd = app.add_subcommand("ingest", "Validate FOF statements plus dependencies into a corpus directory");
  ingest_cmd->add_option("--statements", ingest.statements, "FOF statements file")->required();
  ingest_cmd->add_option("--deps", ingest.deps, "Dependency file (conjecture: premise ...)")->required();
  ingest_cmd->add_option("--defs", ingest.defs, "Definition file (symbol: statement)");
  add_common(ingest_cmd, common, true);

  std::string stats_corpus;
  bool stats_json = false;
  auto* stats_cmd = app.add_subcommand("stats", "Length, word and dependency histograms");
  stats_cmd->add_option("--corpus", stats_corpus, "Corpus directory")->required();
  stats_cmd->add_flag("--json", stats_json, "Machine-readable output");

  SynthOptions synth;
  auto* synth_cmd = app.add_subcommand("synth", "Generate a synthetic corpus");
  synth_cmd->add_option("--n", synth.n, "Number of statements");
  synth_cmd->add_option("--symbols", synth.symbols, "Number of defined symbols");
  synth_cmd->add_option("--dep-model", synth.dep_model, "shared-symbol or random");
  add_common(synth_cmd, common, true);

  TrainOptions train;
  auto* train_cmd = app.add_subcommand("train", "Train a neural premise scorer");
  train_cmd->add_option("--corpus", train.corpus_dir, "Corpus directory")->required();
  train_cmd->add_option("--method", train.method,
                        "char-cnn, char-rnn, char-cnn-rnn, word-cnn, def-cnn or def-cnn-lstm");
  train_cmd->add_option("--profile", train.profile, "desk or paper");
  train_cmd->add_option("--stage1", train.stage1, "Character-level checkpoint for def-* methods");
  train_cmd->add_option("--steps", train.steps, "Optimizer steps");
  train_cmd->add_option("--batch-size", train.batch_size, "Pairs per step");
  train_cmd->add_option("--learning-rate", train.learning_rate, "Adam step size");
  train_cmd->add_option("--monitor-every", train.monitor_every, "Steps between monitor evaluations");
  train_cmd->add_flag("--no-mining", train.no_mining, "Random negatives only");
  add_split_options(train_cmd, train.split);
  add_common(train_cmd, common, true);

  RankOptions rank;
  auto* rank_cmd = app.add_subcommand("rank", "Rank available premises for held-out conjectures");
  rank_cmd->add_option("--corpus", rank.corpus_dir, "Corpus directory")->required();
  rank_cmd->add_option("--method", rank.method, "knn or the trained method name");
  rank_cmd->add_option("--model", rank.model, "Checkpoint for neural methods");
  rank_cmd->add_option("--k", rank.k, "Neighbours for knn")->check(CLI::PositiveNumber);
  rank_cmd->add_option("--set", rank.set, "evaluation, test, monitor, train or all");
  rank_cmd->add_option("--cache", rank.cache, "Embedding cache file, reused when it matches the model");
  add_split_options(rank_cmd, rank.split);
  add_common(rank_cmd, common, true);

  EvalOptions evaluate;
  auto* eval_cmd = app.add_subcommand("eval", "Cutoff sweep, aMRR and proved-set overlap");
  eval_cmd->add_option("--corpus", evaluate.corpus_dir, "Corpus directory")->required();
  eval_cmd->add_option("--rankings", evaluate.rankings, "Ranking files")->required()->expected(1, -1);
  eval_cmd->add_option("--names", evaluate.names, "Method names, one per ranking file")->expected(1, -1);
  eval_cmd->add_option("--cutoffs", evaluate.cutoffs, "Ascending cutoffs (default 16..1024)")->expected(1, -1);
  eval_cmd->add_flag("--ensemble", evaluate.ensemble, "Also score the mean of the two ranking files");
  add_prover_options(eval_cmd, evaluate.prover, true);
  add_common(eval_cmd, common, true);

  ProveOptions prove;
  auto* prove_cmd = app.add_subcommand("prove", "Run the external prover on one conjecture");
  prove_cmd->add_option("--corpus", prove.corpus_dir, "Corpus directory")->required();
  prove_cmd->add_option("--conjecture", prove.conjecture, "Conjecture name")->required();
  prove_cmd->add_option("--premises", prove.premises, "Premise names")->delimiter(',');
  prove_cmd->add_option("--rankings", prove.rankings, "Take the top --k premises from this ranking file");
  prove_cmd->add_option("--k", prove.k, "Premises taken from --rankings");
  prove_cmd->add_flag("--dry-run", prove.dry_run, "Print the invocation and problem without running");
  add_prover_options(prove_cmd, prove.prover, false);
  add_common(prove_cmd, common, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    report_error("UsageError", "UsageError", e.what());
    return 2;
  }

  try {
    if (*ingest_cmd) return run_ingest(ingest, common);
    if (*stats_cmd) return run_stats(stats_corpus, stats_json);
    if (*synth_cmd) return run_synth(synth, common);
    if (*train_cmd) return run_train(train, common);
    if (*rank_cmd) return run_rank(rank, common);
    if (*eval_cmd) return run_eval(evaluate, common);
    if (*prove_cmd) return run_prove(prove, common);
  } catch (const Error& e) {
    report_error(category_name(e.category()), e.kind(), e.what());
    return exit_code(e.category());
  } catch (const fs::filesystem_error& e) {
    report_error("DataError", "IoError", e.what());
    return 3;
  } catch (const std::exception& e) {
    report_error("ComputeError", "InternalError", e.what());
    return 4;
  }
  return 2;
}
