#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "premsel/corpus/split.hpp"
#include "premsel/models/pair_model.hpp"
#include "premsel/training/batch.hpp"

namespace premsel::training {

struct TrainConfig {
  std::size_t steps = 2000;
  std::size_t batch_size = 128;
  double learning_rate = 1e-4;
  double polyak_decay = 0.999;
  double mined_ratio = 0.25;
  bool mining = true;
  /// Steps between mining rounds; each round refreshes the scoring snapshot.
  std::size_t mine_every = 50;
  /// Train conjectures visited per mining round.
  std::size_t mining_conjectures = 16;
  /// Uniformly sampled candidate premises per visited conjecture.
  std::size_t mining_candidates = 64;
  std::size_t mined_per_conjecture = 4;
  std::size_t queue_capacity = 2048;
  std::size_t monitor_every = 200;
  std::size_t monitor_negatives = 128;
  std::uint64_t seed = 1;
  /// Single-threaded with synchronous mining; bit-identical across runs.
  bool deterministic = true;
  /// > 1 (and not deterministic) runs mining on a worker thread.
  std::size_t jobs = 1;
};

/// Step counts and learning rates per profile. The desk profile trains with
/// a larger step size and a shorter averaging horizon, to fit a few minutes.
TrainConfig default_train_config(models::Profile profile);

nlohmann::json to_json(const TrainConfig& config);

struct MonitorRecord {
  std::size_t step = 0;
  /// Mean training loss since the previous record; empty at step 0.
  std::optional<double> loss;
  double approx_amrr = 0.0;
};

struct TrainResult {
  /// Weights and shadows of the best monitored step.
  models::PairModel model;
  std::vector<MonitorRecord> history;
  std::size_t best_step = 0;
  double best_monitor = 0.0;
  std::size_t mined_pairs = 0;
};

using MonitorCallback = std::function<void(const MonitorRecord&)>;

/// Trains the pair model on the train split with logistic loss and Adam,
/// monitoring approximate aMRR (shadow weights) on split.monitor at step 0,
/// every monitor_every steps and at the end. Without a monitor set the final
/// step is kept. Throws DivergenceError on a non-finite loss.
TrainResult train(models::PairModel model, const corpus::Corpus& corpus, const corpus::Split& split,
                  const TrainConfig& config, const MonitorCallback& on_monitor = {});

/// `step loss approx_amrr` lines, "-" for a missing loss.
std::string format_monitor_log(const std::vector<MonitorRecord>& history);

/// Approximate aMRR of the model's shadows on `conjectures`.
double monitor_value(const models::PairModel& model, const corpus::Corpus& corpus,
                     const std::vector<models::Tensor<float>>& inputs, std::span<const corpus::StatementId> conjectures,
                     std::uint64_t seed, std::size_t negatives);

}  // namespace premsel::training
