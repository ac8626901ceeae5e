#include "premsel/training/trainer.hpp"

#include <atomic>
#include <cmath>
#include <condition_variable>
#include <cstdio>
#include <map>
#include <memory>
#include <mutex>
#include <thread>

#include "premsel/error.hpp"
#include "premsel/eval/metrics.hpp"
#include "premsel/models/ranking.hpp"
#include "premsel/ndt/ops.hpp"
#include "premsel/ndt/optim.hpp"

namespace premsel::training {

using models::PairModel;
using models::Side;
using ndt::ParamStore;
using ndt::Tensor;
using ndt::Var;

TrainConfig default_train_config(models::Profile profile) {
  TrainConfig c;
  if (profile == models::Profile::Desk) {
    c.steps = 1500;
    c.batch_size = 64;
    c.learning_rate = 1e-3;
    c.polyak_decay = 0.98;
    c.mine_every = 20;
    c.monitor_every = 100;
  }
  return c;
}

nlohmann::json to_json(const TrainConfig& c) {
  return {{"steps", c.steps},
          {"batch_size", c.batch_size},
          {"learning_rate", c.learning_rate},
          {"polyak_decay", c.polyak_decay},
          {"mined_ratio", c.mined_ratio},
          {"mining", c.mining},
          {"mine_every", c.mine_every},
          {"mining_conjectures", c.mining_conjectures},
          {"mining_candidates", c.mining_candidates},
          {"mined_per_conjecture", c.mined_per_conjecture},
          {"queue_capacity", c.queue_capacity},
          {"monitor_every", c.monitor_every},
          {"monitor_negatives", c.monitor_negatives},
          {"seed", std::to_string(c.seed)},
          {"deterministic", c.deterministic}};
}

double monitor_value(const PairModel& model, const corpus::Corpus& corpus, const std::vector<Tensor<float>>& inputs,
                     std::span<const corpus::StatementId> conjectures, std::uint64_t seed, std::size_t negatives) {
  models::Scorer scorer(model, corpus, inputs);
  const eval::PairScorer score = [&](StatementId c, std::span<const StatementId> premises) {
    return scorer.logits(c, premises);
  };
  return eval::approx_amrr(score, corpus, conjectures, seed, negatives).value;
}

namespace {

/// One mining round against fixed weights; appends to the queue.
std::size_t mining_round(const PairModel& model, const ParamStore<float>& weights, const TrainingLabels& labels,
                         const std::vector<Tensor<float>>& inputs, NegativeQueue& queue, const TrainConfig& config,
                         Rng& rng) {
  models::EmbeddingCache cache(model.checksum(weights));
  models::Scorer scorer(model, labels.corpus(), inputs, weights, cache);
  const PremiseScorer score = [&](StatementId c, std::span<const StatementId> premises) {
    return scorer.logits(c, premises);
  };
  const auto& train = labels.train();
  std::size_t pushed = 0;
  for (std::size_t i = 0; i < config.mining_conjectures; ++i) {
    const StatementId c = train[rng.index(train.size())];
    const auto picks = rng.sample_indices(c, std::min<std::size_t>(config.mining_candidates, c));
    const std::vector<StatementId> pool(picks.begin(), picks.end());
    for (const StatementId p : mine_negatives(score, labels, c, pool, config.mined_per_conjecture)) {
      pushed += queue.push({c, p});
    }
  }
  return pushed;
}

/// Background miner: re-mines whenever the trainer publishes new weights.
class MinerThread {
public:
  MinerThread(const PairModel& model, const TrainingLabels& labels, const std::vector<Tensor<float>>& inputs,
              NegativeQueue& queue, const TrainConfig& config, std::uint64_t seed)
      : model_(model), labels_(labels), inputs_(inputs), queue_(queue), config_(config), rng_(seed) {
    thread_ = std::thread([this] { run(); });
  }
  ~MinerThread() {
    {
      std::lock_guard lock(mutex_);
      stop_ = true;
    }
    wake_.notify_all();
    thread_.join();
  }

  void publish(const ParamStore<float>& weights) {
    {
      std::lock_guard lock(mutex_);
      snapshot_ = std::make_shared<const ParamStore<float>>(weights);
    }
    wake_.notify_all();
  }

  std::size_t pushed() const { return pushed_; }
  void rethrow() {
    std::lock_guard lock(mutex_);
    if (error_) std::rethrow_exception(error_);
  }

private:
  void run() {
    for (;;) {
      std::shared_ptr<const ParamStore<float>> weights;
      {
        std::unique_lock lock(mutex_);
        wake_.wait(lock, [this] { return stop_ || snapshot_; });
        if (stop_) return;
        weights = std::move(snapshot_);
      }
      try {
        pushed_ += mining_round(model_, *weights, labels_, inputs_, queue_, config_, rng_);
      } catch (...) {
        std::lock_guard lock(mutex_);
        error_ = std::current_exception();
        return;
      }
    }
  }

  const PairModel& model_;
  const TrainingLabels& labels_;
  const std::vector<Tensor<float>>& inputs_;
  NegativeQueue& queue_;
  const TrainConfig& config_;
  Rng rng_;
  std::mutex mutex_;
  std::condition_variable wake_;
  std::shared_ptr<const ParamStore<float>> snapshot_;
  bool stop_ = false;
  std::exception_ptr error_;
  std::atomic<std::size_t> pushed_{0};
  std::thread thread_;
};

double train_step(PairModel& model, const std::vector<Tensor<float>>& inputs, const std::vector<TrainExample>& batch,
                  ndt::Adam<float>& adam) {
  std::map<StatementId, std::uint32_t> conj_slot, axiom_slot;
  std::vector<const Tensor<float>*> conj_inputs, axiom_inputs;
  std::vector<std::uint32_t> conj_rows, axiom_rows;
  std::vector<float> labels;
  for (const TrainExample& e : batch) {
    auto [c, c_new] = conj_slot.try_emplace(e.conjecture, static_cast<std::uint32_t>(conj_inputs.size()));
    if (c_new) conj_inputs.push_back(&inputs[e.conjecture]);
    auto [a, a_new] = axiom_slot.try_emplace(e.premise, static_cast<std::uint32_t>(axiom_inputs.size()));
    if (a_new) axiom_inputs.push_back(&inputs[e.premise]);
    conj_rows.push_back(c->second);
    axiom_rows.push_back(a->second);
    labels.push_back(e.label);
  }

  ndt::Tape<float> tape;
  ndt::Binder<float> bind(tape, model.params(), true);
  const auto& config = model.config();
  const Var conj = models::embed_batch<float>(bind, config, Side::Conjecture, conj_inputs);
  const Var axiom = models::embed_batch<float>(bind, config, Side::Axiom, axiom_inputs);
  const Var z = models::classify<float>(bind, config, ndt::gather_rows<float>(tape, conj, conj_rows),
                                        ndt::gather_rows<float>(tape, axiom, axiom_rows));
  const Var loss = ndt::bce_with_logits<float>(tape, z, labels);
  const double value = tape.value(loss)[0];
  if (!std::isfinite(value)) throw ComputeError("DivergenceError", "training loss became non-finite");
  tape.backward(loss);
  adam.step(model.params(), bind.gradients());
  return value;
}

}  // namespace

TrainResult train(PairModel model, const corpus::Corpus& corpus, const corpus::Split& split, const TrainConfig& config,
                  const MonitorCallback& on_monitor) {
  if (config.batch_size == 0) throw UsageError("batch size must be positive");
  if (config.monitor_every == 0 || config.mine_every == 0) throw UsageError("cadences must be positive");
  const TrainingLabels labels(corpus, split);
  if (labels.train().empty()) throw DataError("EmptySplit", "no train conjectures");
  const std::vector<Tensor<float>> inputs = model.encode_all(corpus);
  NegativeQueue queue(labels, config.queue_capacity);
  Rng batch_rng(derive_seed(config.seed, "batches"));
  Rng mining_rng(derive_seed(config.seed, "mining"));
  const std::uint64_t monitor_seed = derive_seed(config.seed, "monitor");

  ndt::AdamConfig adam_config;
  adam_config.learning_rate = config.learning_rate;
  adam_config.polyak_decay = config.polyak_decay;
  ndt::Adam<float> adam(model.params(), adam_config);
  model.shadows() = adam.shadows();

  const bool threaded_miner = config.mining && !config.deterministic && config.jobs > 1;
  std::unique_ptr<MinerThread> miner;
  if (threaded_miner) {
    miner = std::make_unique<MinerThread>(model, labels, inputs, queue, config, derive_seed(config.seed, "miner"));
  }

  TrainResult result{model, {}, 0, 0.0, 0};
  bool have_best = false;
  double loss_sum = 0.0;
  std::size_t loss_count = 0;
  const auto monitor = [&](std::size_t step) {
    MonitorRecord record;
    record.step = step;
    if (loss_count) record.loss = loss_sum / static_cast<double>(loss_count);
    loss_sum = 0.0;
    loss_count = 0;
    const bool has_monitor = !split.monitor.empty();
    if (has_monitor) {
      record.approx_amrr = monitor_value(model, corpus, inputs, split.monitor, monitor_seed, config.monitor_negatives);
    }
    result.history.push_back(record);
    if (on_monitor) on_monitor(record);
    const bool better = has_monitor ? (!have_best || record.approx_amrr < result.best_monitor) : true;
    if (better) {
      have_best = true;
      result.best_step = step;
      result.best_monitor = record.approx_amrr;
      result.model.params() = model.params();
      result.model.shadows() = model.shadows();
    }
  };

  monitor(0);
  for (std::size_t step = 1; step <= config.steps; ++step) {
    if (config.mining && (step - 1) % config.mine_every == 0) {
      if (miner) {
        miner->rethrow();
        miner->publish(model.shadows());
      } else {
        result.mined_pairs += mining_round(model, model.shadows(), labels, inputs, queue, config, mining_rng);
      }
    }
    const auto batch = make_batch(labels, queue, config.batch_size, config.mining ? config.mined_ratio : 0.0, batch_rng);
    loss_sum += train_step(model, inputs, batch, adam);
    ++loss_count;
    model.shadows() = adam.shadows();
    if (step % config.monitor_every == 0 || step == config.steps) monitor(step);
  }
  if (miner) {
    miner->rethrow();
    result.mined_pairs = miner->pushed();
    miner.reset();
  }

  nlohmann::json history = nlohmann::json::array();
  for (const auto& r : result.history) {
    history.push_back({{"step", r.step},
                       {"loss", r.loss ? nlohmann::json(*r.loss) : nlohmann::json(nullptr)},
                       {"approx_amrr", r.approx_amrr}});
  }
  result.model.meta() = {{"train_config", to_json(config)},
                         {"best_step", result.best_step},
                         {"best_monitor", result.best_monitor},
                         {"mined_pairs", result.mined_pairs},
                         {"history", history}};
  return result;
}

std::string format_monitor_log(const std::vector<MonitorRecord>& history) {
  std::string out = "step loss approx_amrr\n";
  char buf[128];
  for (const auto& r : history) {
    if (r.loss) {
      std::snprintf(buf, sizeof buf, "%zu %.6f %.6f\n", r.step, *r.loss, r.approx_amrr);
    } else {
      std::snprintf(buf, sizeof buf, "%zu - %.6f\n", r.step, r.approx_amrr);
    }
    out += buf;
  }
  return out;
}

}  // namespace premsel::training
